#pragma once

// Random small systems and helpers shared by the unit, property and
// acceptance suites.

#include <random>
#include <string>
#include <vector>

#include "tmspec/dsl.hpp"
#include "tmspec/mecs.hpp"
#include "tmspec/smts.hpp"
#include "tmspec/trace_distance.hpp"

namespace tmtest {

using namespace tmspec;

using Rng = std::mt19937_64;

inline std::string spec_path(const std::string& name) { return std::string(TMSPEC_SPECS_DIR) + "/" + name; }

inline const SpecFile& resource() {
  static const SpecFile f = load_spec(spec_path("resource.spec"));
  return f;
}

inline LeadFunction constant(const GridConfig& g, long v) { return LeadFunction::constant(g, ExtRational(v)); }

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Grid interval with endpoints in [0, max_c], upper end sometimes infinite.
inline Interval random_interval(Rng& rng, long max_c, bool allow_inf = true) {
  long a = uniform(rng, 0, max_c), b = uniform(rng, 0, max_c);
  if (a > b) std::swap(a, b);
  if (allow_inf && coin(rng, 0.15)) return Interval::from(Rational(a));
  return Interval(Rational(a), Rational(b));
}

/// A delay label most of the time, otherwise one of the actions.
inline TimedLabel random_label(Rng& rng, long max_c, const std::vector<std::string>& actions, bool allow_inf = true) {
  if (actions.empty() || coin(rng, 0.6)) return TimedLabel{kDelay, random_interval(rng, max_c, allow_inf)};
  return TimedLabel::act(actions[uniform(rng, 0, static_cast<long>(actions.size()) - 1)]);
}

inline TimedLabel random_point(Rng& rng, long max_c, const std::vector<std::string>& actions) {
  if (actions.empty() || coin(rng, 0.6)) return TimedLabel::delay_point(Rational(uniform(rng, 0, max_c)));
  return TimedLabel::act(actions[uniform(rng, 0, static_cast<long>(actions.size()) - 1)]);
}

/// A sub-window of k (k itself for discrete actions).
inline TimedLabel narrow(Rng& rng, const TimedLabel& k, long max_c) {
  if (!k.is_delay()) return k;
  long lo = boost::rational_cast<long>(k.window.lo);
  long hi = k.window.hi ? boost::rational_cast<long>(*k.window.hi) : std::max(lo, max_c);
  long a = uniform(rng, lo, hi), b = uniform(rng, lo, hi);
  if (a > b) std::swap(a, b);
  if (k.window.hi_inf() && b == hi && coin(rng)) return TimedLabel{kDelay, Interval::from(Rational(a))};
  return TimedLabel{kDelay, Interval(Rational(a), Rational(b))};
}

struct SmtsShape {
  int max_states = 4;
  long max_c = 3;
  std::vector<std::string> actions{"a", "b"};
  int max_edges = 2;  // per state
  double must_p = 0.4;
  bool deterministic = false;
  bool allow_inf = true;
};

/// Random consistent SMTS. Deterministic systems have at most one may
/// transition per action and state; musts refine a may to the same target.
inline Smts random_smts(Rng& rng, const SmtsShape& sh = {}) {
  Smts s;
  int n = static_cast<int>(uniform(rng, 1, sh.max_states));
  for (int i = 0; i < n; ++i) s.add_state("s" + std::to_string(i));
  std::vector<std::string> all = sh.actions;
  all.push_back(kDelay);
  for (int i = 0; i < n; ++i) {
    int edges = static_cast<int>(uniform(rng, 0, sh.max_edges));
    std::set<std::string> used;
    for (int e = 0; e < edges; ++e) {
      TimedLabel k = random_label(rng, sh.max_c, sh.actions, sh.allow_inf);
      if (sh.deterministic && !used.insert(k.action).second) continue;
      StateId dst = static_cast<StateId>(uniform(rng, 0, n - 1));
      s.add_may(i, k, dst);
      if (coin(rng, sh.must_p)) s.add_must(i, narrow(rng, k, sh.max_c), dst);
    }
  }
  s.normalize();
  return s;
}

/// Random implementation: point labels, must = may.
inline Smts random_implementation(Rng& rng, int max_states, long max_c, const std::vector<std::string>& actions,
                                  int max_edges = 2) {
  Smts s;
  int n = static_cast<int>(uniform(rng, 1, max_states));
  for (int i = 0; i < n; ++i) s.add_state("i" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    int edges = static_cast<int>(uniform(rng, 0, max_edges));
    for (int e = 0; e < edges; ++e)
      s.add_both(i, random_point(rng, max_c, actions), static_cast<StateId>(uniform(rng, 0, n - 1)));
  }
  s.normalize();
  return s;
}

inline Trace random_trace(Rng& rng, std::size_t len, long max_c, const std::vector<std::string>& actions) {
  Trace t;
  for (std::size_t i = 0; i < len; ++i) t.push_back(random_point(rng, max_c, actions));
  return t;
}

struct MecsShape {
  int max_locations = 3;
  long max_c = 3;
  std::vector<std::string> actions{"a", "b"};
  int max_edges = 2;  // per location
  double must_p = 0.5;
  double guard_p = 0.6;
  bool strongly_deterministic = false;
};

inline ClockConstraint random_guard(Rng& rng, const std::vector<std::string>& clocks, long max_c, double p) {
  ClockConstraint g;
  if (!coin(rng, p)) return g;
  const std::string& c = clocks[uniform(rng, 0, static_cast<long>(clocks.size()) - 1)];
  switch (uniform(rng, 0, 2)) {
    case 0: g.at_most(c, uniform(rng, 0, max_c)); break;
    case 1: g.at_least(c, uniform(rng, 0, max_c)); break;
    default: {
      long a = uniform(rng, 0, max_c), b = uniform(rng, 0, max_c);
      if (a > b) std::swap(a, b);
      g.at_least(c, a).at_most(c, b);
    }
  }
  return g;
}

/// Random consistent MECS; musts reuse the guard of their may edge.
inline Mecs random_mecs(Rng& rng, const MecsShape& sh = {}) {
  Mecs m;
  m.alphabet.insert(sh.actions.begin(), sh.actions.end());
  int n = static_cast<int>(uniform(rng, 1, sh.max_locations));
  for (int i = 0; i < n; ++i) m.add_location("q" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    int edges = static_cast<int>(uniform(rng, 0, sh.max_edges));
    std::set<std::string> used;
    for (int e = 0; e < edges; ++e) {
      const std::string& a = sh.actions[uniform(rng, 0, static_cast<long>(sh.actions.size()) - 1)];
      if (sh.strongly_deterministic && !used.insert(a).second) continue;
      ClockConstraint g = random_guard(rng, sh.actions, sh.max_c, sh.guard_p);
      auto dst = static_cast<std::size_t>(uniform(rng, 0, n - 1));
      if (coin(rng, sh.must_p))
        m.add_must(i, a, g, dst);
      else
        m.add_may(i, a, g, dst);
    }
  }
  m.normalize();
  return m;
}

/// d_m(a, b) and d_m(b, a) both zero.
inline bool equivalent(const Smts& a, const Smts& b, const Rational& step = Rational(1)) {
  GridConfig g = auto_grid(a, b, step);
  return h_mod(a, b, g).value == ExtRational(0) && h_mod(b, a, g).value == ExtRational(0);
}

}  // namespace tmtest
