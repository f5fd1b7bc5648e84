#pragma once

#include <vector>

#include "tmspec/lead_lattice.hpp"
#include "tmspec/timed_labels.hpp"

namespace tmspec {

/// A finite sequence of implementation labels.
using Trace = std::vector<TimedLabel>;

/// Lead-function trace distance, computed back to front:
/// h(e, e) = bottom, h(e, t) = h(s, e) = top, h(s, t) = F(s0, t0, h(s1, t1)).
LeadFunction h_trace(const Trace& sigma, const Trace& tau, const GridConfig& grid);

/// Maximum over prefixes of the absolute difference of accumulated delays;
/// infinity on length or discrete-action mismatch.
ExtRational max_lead_direct(const Trace& sigma, const Trace& tau);

}  // namespace tmspec
