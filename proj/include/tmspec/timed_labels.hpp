#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tmspec/lead_lattice.hpp"
#include "tmspec/rational.hpp"

namespace tmspec {

/// Name of the time-passage action.
inline const std::string kDelay = "delta";

/// Closed interval [lo, hi] of non-negative rationals; hi may be infinite.
struct Interval {
  Rational lo{0};
  std::optional<Rational> hi{Rational(0)};  // nullopt = infinity

  Interval() = default;
  Interval(Rational l, std::optional<Rational> h);
  static Interval point(Rational t) { return Interval(t, t); }
  static Interval from(Rational l) { return Interval(l, std::nullopt); }
  static Interval all() { return Interval(Rational(0), std::nullopt); }

  bool hi_inf() const { return !hi.has_value(); }
  bool is_point() const { return hi && *hi == lo; }
  bool contains(const Rational& t) const { return t >= lo && (!hi || t <= *hi); }
  bool subset_of(const Interval& o) const;
  /// Intersection, or nullopt when empty.
  std::optional<Interval> intersect(const Interval& o) const;

  friend bool operator==(const Interval&, const Interval&) = default;
  friend std::strong_ordering operator<=>(const Interval& a, const Interval& b);
};

std::string to_string(const Interval& i);

/// (action, window). Discrete actions carry the window [0,0]; only delta
/// labels carry general windows.
struct TimedLabel {
  std::string action;
  Interval window;

  static TimedLabel act(std::string a) { return TimedLabel{std::move(a), Interval::point(Rational(0))}; }
  static TimedLabel delay(Rational lo, std::optional<Rational> hi) { return TimedLabel{kDelay, Interval(lo, hi)}; }
  static TimedLabel delay_point(Rational t) { return TimedLabel{kDelay, Interval::point(t)}; }

  bool is_delay() const { return action == kDelay; }
  bool is_implementation() const { return window.is_point(); }
  /// Throws ConfigError when a discrete action has a window other than [0,0].
  void validate() const;

  friend bool operator==(const TimedLabel&, const TimedLabel&) = default;
  friend std::strong_ordering operator<=>(const TimedLabel& a, const TimedLabel& b);
};

std::string to_string(const TimedLabel& l);

/// k refines l: same action and k.window within l.window.
bool label_refines(const TimedLabel& k, const TimedLabel& l);

/// Grid points of the window as implementation labels. Infinite windows are
/// truncated at the grid's value cap.
std::vector<TimedLabel> implementations_of(const TimedLabel& k, const GridConfig& grid);

/// F on implementation labels: top on action mismatch, otherwise
/// lambda d. max(|d + t - t'|, alpha(d + t - t')).
LeadFunction f_point(const TimedLabel& m, const TimedLabel& n, const LeadFunction& alpha);

/// Hausdorff extension sup_{m in [k]} inf_{n in [l]} F(m, n, alpha), computed
/// on the grid.
LeadFunction f_label(const TimedLabel& k, const TimedLabel& l, const LeadFunction& alpha);

/// Synchronisation: same action and intersecting windows. Also serves as
/// conjunction of labels.
std::optional<TimedLabel> compose_label(const TimedLabel& k, const TimedLabel& l);
inline std::optional<TimedLabel> conjoin_label(const TimedLabel& k, const TimedLabel& l) {
  return compose_label(k, l);
}

/// Label quotient l / k (the largest m with k * m inside l), by the six-case
/// interval table. Results on discrete actions are projected onto [0,0].
std::optional<TimedLabel> quotient_label(const TimedLabel& l, const TimedLabel& k);

/// The composition bound max(a, a').
LeadFunction p_bound(const LeadFunction& a, const LeadFunction& b);

/// Relaxed conjunction bound max(a, a') + max(beta, gamma).
LeadFunction c_relaxed(const LeadFunction& beta, const LeadFunction& gamma, const LeadFunction& a,
                       const LeadFunction& b);

/// Widens a delta window by n on both sides (clamped at 0); discrete labels
/// are unchanged.
TimedLabel widen_label(const TimedLabel& k, const Rational& n);

/// Maximal labels m for which compose_label(k, m) is undefined for every
/// enabled k: per action the grid-closed complement of the enabled windows.
/// delta is always part of the alphabet.
std::vector<TimedLabel> complement_labels(const std::vector<TimedLabel>& enabled,
                                          const std::set<std::string>& alphabet, const Rational& step);

namespace kernel {

/// A window in grid ticks; `inf` marks an unbounded upper end.
struct TickWindow {
  Ticks lo = 0;
  Ticks hi = 0;
  bool inf = false;
};

TickWindow to_ticks(const Interval& i, const GridConfig& grid);

/// beta(e) = max(|e|, alpha(e)) for every grid lead e, saturated at the cap.
void lead_costs(std::span<const Ticks> alpha, Ticks lead_bound, Ticks cap, std::span<Ticks> beta,
                bool* clipped = nullptr);

/// out(d) = sup_{t in k} inf_{t' in l} beta(d + t - t'), leads off the grid
/// reading as infinity. `out` must not alias `beta`. `clipped` is set when a
/// lead outside the grid was consulted.
void hausdorff(const TickWindow& k, const TickWindow& l, std::span<const Ticks> beta, Ticks lead_bound,
               std::span<Ticks> out, bool* clipped = nullptr);

}  // namespace kernel

}  // namespace tmspec
