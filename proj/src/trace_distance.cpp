#include "tmspec/trace_distance.hpp"

namespace tmspec {

LeadFunction h_trace(const Trace& sigma, const Trace& tau, const GridConfig& grid) {
  if (sigma.size() != tau.size()) return LeadFunction::top(grid);
  LeadFunction h = LeadFunction::bottom(grid);
  for (std::size_t i = sigma.size(); i-- > 0;) h = f_point(sigma[i], tau[i], h);
  return h;
}

ExtRational max_lead_direct(const Trace& sigma, const Trace& tau) {
  if (sigma.size() != tau.size()) return ExtRational::infinity();
  Rational lead(0);
  Rational worst(0);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i].action != tau[i].action) return ExtRational::infinity();
    lead += sigma[i].window.lo - tau[i].window.lo;
    worst = std::max(worst, lead < 0 ? -lead : lead);
  }
  return ExtRational(worst);
}

}  // namespace tmspec
