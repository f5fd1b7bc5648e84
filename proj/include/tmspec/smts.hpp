#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tmspec/lead_lattice.hpp"
#include "tmspec/timed_labels.hpp"

namespace tmspec {

using StateId = std::size_t;

struct Transition {
  StateId src = 0;
  TimedLabel label;
  StateId dst = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend std::strong_ordering operator<=>(const Transition& a, const Transition& b);
};

/// Finite structured modal transition system over timed labels.
///
/// States are dense indices; `names` gives each a printable name. Transition
/// lists are kept as sets (sorted, duplicate free) by `normalize`.
struct Smts {
  std::vector<std::string> names;
  StateId initial = 0;
  std::vector<Transition> may;
  std::vector<Transition> must;

  std::size_t size() const { return names.size(); }
  StateId add_state(std::string name);
  /// Index of a named state, if present.
  std::optional<StateId> find(const std::string& name) const;
  void add_may(StateId s, TimedLabel k, StateId t) { may.push_back({s, std::move(k), t}); }
  void add_must(StateId s, TimedLabel k, StateId t) { must.push_back({s, std::move(k), t}); }
  /// Adds a must transition together with the may transition it requires.
  void add_both(StateId s, const TimedLabel& k, StateId t) {
    add_may(s, k, t);
    add_must(s, k, t);
  }
  void normalize();
  /// Discrete actions used anywhere (delta excluded).
  std::set<std::string> alphabet() const;
  /// Largest finite interval endpoint in any label.
  Rational max_constant() const;
  /// Throws ConfigError on out-of-range states or malformed labels.
  void validate() const;

  friend bool operator==(const Smts&, const Smts&) = default;
};

/// Must transitions with no covering may transition.
std::vector<Transition> check_consistency(const Smts& s);

/// One step of a refinement counterexample: from the pair (left, right) the
/// attacker plays `move` on `side` ("left-may" or "right-must").
struct CounterStep {
  StateId left = 0;
  StateId right = 0;
  std::string side;
  Transition move;
};

struct RefinementWitness {
  bool holds = false;
  /// Greatest modal refinement relation when `holds`.
  std::set<std::pair<StateId, StateId>> relation;
  /// Alternating path ending in a move that has no admissible answer.
  std::vector<CounterStep> counterexample;
};

RefinementWitness boolean_refines(const Smts& s, const Smts& t);

struct DistanceResult {
  ExtRational value;
  std::map<std::pair<StateId, StateId>, LeadFunction> table;
  std::size_t iterations = 0;
  bool saturated = false;
};

/// Grid suited to comparing two systems: step 1 unless given, bounds from
/// the largest time constant of either operand.
GridConfig auto_grid(const Smts& s, const Smts& t, const Rational& step = Rational(1));

/// Least fixed point of the modal refinement distance equations, by
/// worklist iteration from bottom over the pairs reachable from the initial
/// pair.
DistanceResult h_mod(const Smts& s, const Smts& t, const GridConfig& grid);
inline DistanceResult h_mod(const Smts& s, const Smts& t) { return h_mod(s, t, auto_grid(s, t)); }

/// Removes all states that must-reach `bad`; nullopt when the initial state
/// is among them. Remaining states keep their relative order.
std::optional<Smts> prune(const Smts& s, const std::set<StateId>& bad);

/// Drops states unreachable from the initial state.
Smts restrict_reachable(const Smts& s);

Smts compose(const Smts& s, const Smts& t);

/// Quotient t // s, with complement labels computed on a grid of `step`.
/// The alphabet defaults to the discrete actions of both operands.
std::optional<Smts> quotient(const Smts& t, const Smts& s, const Rational& step = Rational(1),
                             const std::set<std::string>& extra_alphabet = {});

std::optional<Smts> conjoin(const Smts& s, const Smts& t);

/// Copy of `s` with every delta window widened by n.
Smts widen(const Smts& s, const Rational& n);

bool is_widening(const Smts& s, const Smts& t, const LeadFunction& bound);

bool is_deterministic(const Smts& s);

/// Tree unfolding of depth `depth` (states at depth `depth` have no
/// transitions).
Smts unfold(const Smts& s, std::size_t depth, std::size_t budget = 200000);

/// Depth-bounded grid implementations: per state, every may transition is
/// either omitted or replaced by a non-empty set of grid points, such that
/// each must transition is covered by a chosen point inside its window.
std::vector<Smts> enumerate_implementations(const Smts& s, std::size_t depth, const GridConfig& grid,
                                            std::size_t budget = 20000);

/// sup over implementations of s of inf over implementations of t of the
/// modal distance, on the depth-bounded fragments.
ExtRational thorough_distance_oracle(const Smts& s, const Smts& t, std::size_t depth, const GridConfig& grid,
                                     std::size_t budget = 20000);

}  // namespace tmspec
