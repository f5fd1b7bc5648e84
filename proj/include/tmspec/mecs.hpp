#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tmspec/smts.hpp"

namespace tmspec {

/// Conjunction of clock bounds, one closed interval per clock. Clocks that
/// are absent are unconstrained.
struct ClockConstraint {
  std::map<std::string, Interval> bounds;

  static ClockConstraint truth() { return {}; }
  /// Adds `clock <= k` or `clock >= k` (intersecting with any existing bound).
  ClockConstraint& at_most(const std::string& clock, long k);
  ClockConstraint& at_least(const std::string& clock, long k);

  Interval on(const std::string& clock) const;
  bool is_true() const { return bounds.empty(); }
  /// Per-clock intersection; nullopt when some clock becomes empty.
  std::optional<ClockConstraint> conjoin(const ClockConstraint& o) const;
  bool subset_of(const ClockConstraint& o) const;
  long max_constant() const;

  friend bool operator==(const ClockConstraint&, const ClockConstraint&) = default;
};

std::string to_string(const ClockConstraint& g);

using IntervalValuation = std::map<std::string, Interval>;

/// Some point of `v` satisfies `g`; clocks missing from `v` read as [0,0].
bool constraint_sat(const IntervalValuation& v, const ClockConstraint& g);

struct MecsEdge {
  std::size_t src = 0;
  std::string action;
  ClockConstraint guard;
  std::size_t dst = 0;

  friend bool operator==(const MecsEdge&, const MecsEdge&) = default;
};

/// Modal event-clock specification: one clock per action, recording the time
/// since that action last occurred.
struct Mecs {
  std::set<std::string> alphabet;
  std::vector<std::string> locations;
  std::size_t initial = 0;
  std::vector<MecsEdge> may;
  std::vector<MecsEdge> must;

  std::size_t size() const { return locations.size(); }
  std::size_t add_location(std::string name);
  std::optional<std::size_t> find(const std::string& name) const;
  void add_may(std::size_t q, std::string a, ClockConstraint g, std::size_t r) {
    may.push_back({q, std::move(a), std::move(g), r});
  }
  /// Must edge plus the may edge with the same guard.
  void add_must(std::size_t q, const std::string& a, const ClockConstraint& g, std::size_t r) {
    may.push_back({q, a, g, r});
    must.push_back({q, a, g, r});
  }
  void normalize();
  long max_constant() const;
  /// Clocks read by some guard, sorted.
  std::vector<std::string> guard_clocks() const;
  /// Throws ConfigError on dangling locations, actions outside the alphabet,
  /// guards on unknown clocks, or must edges without a covering may edge.
  void validate() const;
};

enum class DelayMode { point, interval };

struct SemanticsOptions {
  Rational step{1};
  long clock_cap = 0;  // 0 picks max constant + 1
  DelayMode delays = DelayMode::point;
  std::size_t state_budget = 200000;
};

/// Finite interval-timed semantics. Clock values are multiples of the step
/// and saturate at the clock cap (which must exceed every guard constant);
/// delays range over the grid points of [0, cap]. Only clocks read by some
/// guard are tracked.
Smts semantics(const Mecs& a, const SemanticsOptions& opt = {});

/// Location product synchronising on common actions, guards intersected.
Mecs mecs_compose(const Mecs& a, const Mecs& b);

/// Quotient b // a and conjunction a & b. Both unfold locations by the clock
/// valuation on entry (on the unit grid, saturating at `clock_cap`, default
/// max constant + 1) so that each edge is guarded by the exact valuation at
/// which it fires. nullopt when the construction does not exist.
std::optional<Mecs> mecs_quotient(const Mecs& b, const Mecs& a, long clock_cap = 0);
std::optional<Mecs> mecs_conjoin(const Mecs& a, const Mecs& b, long clock_cap = 0);

/// Every guard widened by n on each side, clamped at 0.
Mecs mecs_widen(const Mecs& a, long n);

bool strongly_deterministic(const Mecs& a);

/// Grid and cap shared by the semantics of both operands: the larger of the
/// two default caps unless `opt.clock_cap` is set.
SemanticsOptions common_options(const Mecs& a, const Mecs& b, SemanticsOptions opt = {});

/// Modal distance between the semantics, on a lead grid sized for the cap.
DistanceResult mecs_distance(const Mecs& a, const Mecs& b, const SemanticsOptions& opt = {});

}  // namespace tmspec
