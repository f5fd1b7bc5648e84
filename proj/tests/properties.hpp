#pragma once

// Randomised property checks. Each returns a Tally; the unit suite runs them
// at small sample counts and the acceptance binary at full counts.

#include <sstream>

#include "support.hpp"

namespace tmtest {

struct Tally {
  std::string name;
  long checked = 0;
  long violations = 0;
  long inconclusive = 0;  // skipped because saturation hides the answer
  std::string example;

  void fail(const std::string& why) {
    if (violations++ == 0) example = why;
  }
  bool ok() const { return violations == 0 && checked > 0; }
};

inline std::string show(const Smts& s) { return print_smts("X", s); }
inline std::string show(const TimedLabel& l) { return to_string(l); }

// ---------------------------------------------------------------- labels

/// Grid wide enough that leads consulted from |d| <= kInner never leave it.
inline const GridConfig kLabelGrid{Rational(1), Rational(16), Rational(40)};
inline constexpr long kLabelMax = 4;
inline constexpr long kInner = 8;

inline LeadFunction random_lead_function(Rng& rng, const GridConfig& g, long max_v = 6) {
  LeadFunction f(g);
  for (Ticks d = -g.lead_ticks(); d <= g.lead_ticks(); ++d)
    f.set(g.from_ticks(d), coin(rng, 0.05) ? ExtRational::infinity() : ExtRational(uniform(rng, 0, max_v)));
  return f;
}

/// a below b at every lead within the inner range.
inline bool leq_inner(const LeadFunction& a, const LeadFunction& b, long* at = nullptr) {
  for (long d = -kInner; d <= kInner; ++d)
    if (a.at(Rational(d)) > b.at(Rational(d))) {
      if (at) *at = d;
      return false;
    }
  return true;
}

inline TimedLabel random_delay(Rng& rng) { return TimedLabel{kDelay, random_interval(rng, kLabelMax, false)}; }

inline LeadFunction brute_sup_inf(const TimedLabel& k, const TimedLabel& l, const LeadFunction& alpha) {
  LeadFunction out = LeadFunction::bottom(alpha.grid());
  for (const auto& m : implementations_of(k, alpha.grid())) {
    LeadFunction best = LeadFunction::top(alpha.grid());
    for (const auto& n : implementations_of(l, alpha.grid())) best = lattice_min(best, f_point(m, n, alpha));
    out = lattice_max(out, best);
  }
  return out;
}

inline std::string lead_note(long d, const LeadFunction& lhs, const LeadFunction& rhs) {
  return "at lead " + std::to_string(d) + ": " + to_string(lhs.at(Rational(d))) + " vs " +
         to_string(rhs.at(Rational(d)));
}

inline Tally f_hausdorff(Rng& rng, long n) {
  Tally t{"F is the Hausdorff lifting of its point values"};
  for (long i = 0; i < n; ++i) {
    auto k = random_label(rng, kLabelMax, {"a", "b"}, false), l = random_label(rng, kLabelMax, {"a", "b"}, false);
    auto alpha = random_lead_function(rng, kLabelGrid);
    ++t.checked;
    if (f_label(k, l, alpha) != brute_sup_inf(k, l, alpha)) t.fail(show(k) + " vs " + show(l));
  }
  return t;
}

inline Tally f_monotone(Rng& rng, long n) {
  Tally t{"F is monotone in its third argument"};
  for (long i = 0; i < n; ++i) {
    auto k = random_delay(rng), l = random_delay(rng);
    auto a = random_lead_function(rng, kLabelGrid);
    auto b = lattice_add(a, random_lead_function(rng, kLabelGrid, 3));
    ++t.checked;
    if (!lattice_leq(f_label(k, l, a), f_label(k, l, b))) t.fail(show(k) + " vs " + show(l));
  }
  return t;
}

/// F(k,l,a) + F(l,m,b) above F(k,m,a+b), lead by lead.
inline Tally f_triangle(Rng& rng, long n) {
  Tally t{"F satisfies the extended triangle inequality"};
  for (long i = 0; i < n; ++i) {
    auto k = random_delay(rng), l = random_delay(rng), m = random_delay(rng);
    bool at_bottom = i % 2 == 0;
    auto a = at_bottom ? LeadFunction::bottom(kLabelGrid) : random_lead_function(rng, kLabelGrid);
    auto b = at_bottom ? LeadFunction::bottom(kLabelGrid) : random_lead_function(rng, kLabelGrid);
    auto lhs = lattice_add(f_label(k, l, a), f_label(l, m, b));
    auto rhs = f_label(k, m, lattice_add(a, b));
    ++t.checked;
    long d = 0;
    if (!leq_inner(rhs, lhs, &d))
      t.fail(show(k) + ", " + show(l) + ", " + show(m) + (at_bottom ? " with bottom " : " ") + lead_note(d, lhs, rhs));
  }
  return t;
}

inline Tally f_p_bound(Rng& rng, long n) {
  Tally t{"composition is bounded by P = max"};
  while (t.checked < n) {
    auto k = random_delay(rng), k2 = random_delay(rng), l = random_delay(rng), l2 = random_delay(rng);
    auto kk = compose_label(k, k2), ll = compose_label(l, l2);
    if (!kk || !ll) continue;
    auto a = random_lead_function(rng, kLabelGrid), a2 = random_lead_function(rng, kLabelGrid);
    auto lhs = f_label(*kk, *ll, p_bound(a, a2));
    auto rhs = p_bound(f_label(k, l, a), f_label(k2, l2, a2));
    ++t.checked;
    long d = 0;
    if (!leq_inner(lhs, rhs, &d))
      t.fail(show(k) + "*" + show(k2) + " vs " + show(l) + "*" + show(l2) + " " + lead_note(d, lhs, rhs));
  }
  return t;
}

/// With k' and l' widened by b and c, F(m, k'&l', C(a,a')) below
/// C(F(m,k,a), F(m,l,a')), where C adds max(beta, gamma) and beta, gamma
/// are the label distances h(k', k) and h(l', l).
inline Tally f_c_bound(Rng& rng, long n) {
  Tally t{"conjunction is relaxed bounded by C"};
  const auto bot = LeadFunction::bottom(kLabelGrid);
  while (t.checked < n) {
    auto k = random_delay(rng), l = random_delay(rng), m = random_delay(rng);
    if (f_label(m, k, bot).is_top() || f_label(m, l, bot).is_top()) continue;
    Rational b(uniform(rng, 0, 3)), c(uniform(rng, 0, 3));
    auto kw = widen_label(k, b), lw = widen_label(l, c);
    auto kl = conjoin_label(kw, lw);
    if (!kl) continue;
    auto beta = f_label(kw, k, bot), gamma = f_label(lw, l, bot);
    auto a = random_lead_function(rng, kLabelGrid), a2 = random_lead_function(rng, kLabelGrid);
    auto lhs = f_label(m, *kl, c_relaxed(beta, gamma, a, a2));
    auto rhs = c_relaxed(beta, gamma, f_label(m, k, a), f_label(m, l, a2));
    ++t.checked;
    long d = 0;
    if (!leq_inner(lhs, rhs, &d))
      t.fail("m=" + show(m) + " k=" + show(k) + "+" + to_string(b) + " l=" + show(l) + "+" + to_string(c) + " " +
             lead_note(d, lhs, rhs));
  }
  return t;
}

// The six-case table against the Galois property over endpoints {0..6, inf}.
inline Tally quotient_galois() {
  Tally t{"l/k above m iff k*m defined and below l"};
  std::vector<Interval> all;
  for (long a = 0; a <= 6; ++a) {
    for (long b = a; b <= 6; ++b) all.emplace_back(Rational(a), Rational(b));
    all.push_back(Interval::from(Rational(a)));
  }
  for (const auto& kw : all)
    for (const auto& lw : all)
      for (const auto& mw : all) {
        TimedLabel k{kDelay, kw}, l{kDelay, lw}, m{kDelay, mw};
        auto q = quotient_label(l, k);
        bool left = q && label_refines(m, *q);
        auto c = compose_label(k, m);
        bool right = c && label_refines(*c, l);
        ++t.checked;
        if (left != right)
          t.fail("k=" + to_string(kw) + " l=" + to_string(lw) + " m=" + to_string(mw) + ": quotient " +
                 (q ? to_string(q->window) : std::string("undefined")) + ", k*m " +
                 (c ? to_string(c->window) : std::string("undefined")));
      }
  return t;
}

// ---------------------------------------------------------------- traces

inline Tally lead_oracle(Rng& rng, long n) {
  Tally t{"recursive trace distance equals the direct maximum lead"};
  const GridConfig g{Rational(1), Rational(64), Rational(64)};
  for (long i = 0; i < n; ++i) {
    std::size_t len = uniform(rng, 0, 8);
    auto s = random_trace(rng, len, 6, {"a", "b"});
    // mostly same length and actions, so that the lead is finite
    Trace u = coin(rng, 0.8) ? s : random_trace(rng, uniform(rng, 0, 8), 6, {"a", "b"});
    for (auto& x : u)
      if (x.is_delay() && coin(rng, 0.7)) x = TimedLabel::delay_point(Rational(uniform(rng, 0, 6)));
    auto h = eval_zero(h_trace(s, u, g));
    auto direct = max_lead_direct(s, u);
    ++t.checked;
    if (h != direct) t.fail("lengths " + std::to_string(s.size()) + "/" + std::to_string(u.size()) + ": " +
                            to_string(h) + " vs " + to_string(direct));
  }
  return t;
}

// ---------------------------------------------------------------- systems

/// Shape of a random system: edges (src, action, dst, must?) on which
/// instances draw their own windows, so that instances are close to each
/// other.
struct Skeleton {
  int states = 1;
  struct Edge {
    int src, dst;
    std::string action;
    bool must;
  };
  std::vector<Edge> edges;
};

inline Skeleton random_skeleton(Rng& rng, int max_states, bool deterministic, int max_edges = 2) {
  Skeleton sk;
  sk.states = static_cast<int>(uniform(rng, 1, max_states));
  const std::vector<std::string> acts{"a", "b", kDelay};
  for (int s = 0; s < sk.states; ++s) {
    std::set<std::string> used;
    for (int e = uniform(rng, 1, max_edges); e > 0; --e) {
      const auto& a = acts[uniform(rng, 0, 2)];
      if (deterministic && !used.insert(a).second) continue;
      sk.edges.push_back({s, static_cast<int>(uniform(rng, 0, sk.states - 1)), a, coin(rng, 0.5)});
    }
  }
  return sk;
}

inline Smts instantiate(Rng& rng, const Skeleton& sk, long max_c = 4) {
  Smts s;
  for (int i = 0; i < sk.states; ++i) s.add_state("s" + std::to_string(i));
  for (const auto& e : sk.edges) {
    TimedLabel k = e.action == kDelay ? TimedLabel{kDelay, random_interval(rng, max_c)} : TimedLabel::act(e.action);
    s.add_may(e.src, k, e.dst);
    if (e.must) s.add_must(e.src, narrow(rng, k, max_c), e.dst);
  }
  s.normalize();
  return s;
}

/// A modal refinement of s on the same states: may windows narrowed around
/// the musts they carry, optional may edges dropped or made mandatory.
inline Smts random_refinement(Rng& rng, const Smts& s, long max_c = 4) {
  Smts r;
  r.names = s.names;
  r.initial = s.initial;
  std::vector<char> parent_of(s.must.size(), 0);
  std::vector<std::vector<std::size_t>> children(s.may.size());
  std::vector<char> taken(s.must.size(), 0);
  for (std::size_t i = 0; i < s.may.size(); ++i)
    for (std::size_t j = 0; j < s.must.size(); ++j)
      if (!taken[j] && s.must[j].src == s.may[i].src && s.must[j].dst == s.may[i].dst &&
          label_refines(s.must[j].label, s.may[i].label)) {
        taken[j] = 1;
        children[i].push_back(j);
      }
  for (std::size_t i = 0; i < s.may.size(); ++i) {
    const auto& e = s.may[i];
    if (children[i].empty() && coin(rng, 0.25)) continue;
    // narrowed musts first, then a may window covering them
    std::vector<TimedLabel> kept;
    for (auto j : children[i]) kept.push_back(narrow(rng, s.must[j].label, max_c));
    TimedLabel may = e.label;
    if (e.label.is_delay() && coin(rng)) {
      TimedLabel cand = narrow(rng, e.label, max_c);
      bool covers = std::all_of(kept.begin(), kept.end(), [&](auto& k) { return label_refines(k, cand); });
      if (covers) may = cand;
    }
    r.add_may(e.src, may, e.dst);
    for (const auto& k : kept) r.add_must(e.src, k, e.dst);
    if (children[i].empty() && coin(rng, 0.25)) r.add_must(e.src, narrow(rng, may, max_c), e.dst);
  }
  r.normalize();
  return r;
}

/// A modal abstraction of s: windows widened, some musts relaxed to mays,
/// possibly an extra may edge (unless determinism is to be kept).
inline Smts random_abstraction(Rng& rng, const Smts& s, bool keep_deterministic, long max_c = 4) {
  Smts r;
  r.names = s.names;
  r.initial = s.initial;
  std::map<std::pair<StateId, TimedLabel>, TimedLabel> widened;
  for (const auto& e : s.may) {
    TimedLabel w = e.label;
    if (w.is_delay()) {
      Rational lo = std::max(Rational(0), w.window.lo - Rational(uniform(rng, 0, 1)));
      std::optional<Rational> hi;
      if (w.window.hi && !coin(rng, 0.1)) hi = *w.window.hi + Rational(uniform(rng, 0, 1));
      w = TimedLabel{kDelay, Interval(lo, hi)};
    }
    r.add_may(e.src, w, e.dst);
  }
  for (const auto& e : s.must)
    if (!coin(rng, 0.25)) r.add_must(e.src, e.label, e.dst);
  if (!keep_deterministic && coin(rng, 0.3)) {
    auto src = static_cast<StateId>(uniform(rng, 0, static_cast<long>(s.size()) - 1));
    auto dst = static_cast<StateId>(uniform(rng, 0, static_cast<long>(s.size()) - 1));
    r.add_may(src, random_label(rng, max_c, {"a", "b"}), dst);
  }
  r.normalize();
  return r;
}

inline bool refines(const Smts& a, const Smts& b) { return boolean_refines(a, b).holds; }

/// Modal distance on a grid sized for all systems in play; `sat` reports
/// saturation.
inline ExtRational dist(const Smts& a, const Smts& b, bool* sat = nullptr) {
  auto r = h_mod(a, b);
  if (sat) *sat = r.saturated;
  return r.value;
}

inline Tally triangle(Rng& rng, long n) {
  Tally t{"modal distance triangle inequality"};
  while (t.checked < n) {
    auto sk = random_skeleton(rng, 5, coin(rng));
    auto s = instantiate(rng, sk), u = instantiate(rng, sk), v = instantiate(rng, sk);
    bool sat = false;
    auto su = dist(s, u), uv = dist(u, v), sv = dist(s, v, &sat);
    if ((su + uv).is_finite() && sv.is_inf() && sat) {
      ++t.inconclusive;
      continue;
    }
    ++t.checked;
    if (su + uv < sv) t.fail(to_string(su) + " + " + to_string(uv) + " < " + to_string(sv) + "\n" + show(s) + show(u) + show(v));
  }
  return t;
}

inline Tally compose_monotone(Rng& rng, long n) {
  Tally t{"composition is monotone for refinement"};
  while (t.checked < n) {
    auto tt = instantiate(rng, random_skeleton(rng, 3, false));
    auto tt2 = instantiate(rng, random_skeleton(rng, 3, false));
    auto s = random_refinement(rng, tt), s2 = random_refinement(rng, tt2);
    if (!refines(s, tt) || !refines(s2, tt2)) {
      ++t.inconclusive;
      continue;
    }
    ++t.checked;
    if (!refines(compose(s, s2), compose(tt, tt2))) t.fail(show(s) + show(tt) + show(s2) + show(tt2));
  }
  return t;
}

inline Tally compose_bound(Rng& rng, long n) {
  Tally t{"distance between compositions is bounded by the larger distance"};
  while (t.checked < n) {
    auto sk = random_skeleton(rng, 3, false), sk2 = random_skeleton(rng, 3, false);
    auto s = instantiate(rng, sk), tt = instantiate(rng, sk);
    auto s2 = instantiate(rng, sk2), tt2 = instantiate(rng, sk2);
    auto bound = max(dist(s, tt), dist(s2, tt2));
    bool sat = false;
    auto d = dist(compose(s, s2), compose(tt, tt2), &sat);
    if (bound.is_finite() && d.is_inf() && sat) {
      ++t.inconclusive;
      continue;
    }
    ++t.checked;
    if (d > bound) t.fail(to_string(d) + " > " + to_string(bound) + "\n" + show(s) + show(tt) + show(s2) + show(tt2));
  }
  return t;
}

inline const std::set<std::string> kSigma{"a", "b"};

/// X refines T//S iff S||X refines T, for deterministic S. Half the samples
/// draw X as a refinement of the quotient so that both answers occur.
inline Tally quotient_adjunction(Rng& rng, long n, long* positives = nullptr) {
  Tally t{"quotient is adjoint to composition (deterministic divisor)"};
  long pos = 0;
  while (t.checked < n) {
    auto s = instantiate(rng, random_skeleton(rng, 3, true));
    auto tt = instantiate(rng, random_skeleton(rng, 3, false));
    auto q = quotient(tt, s, Rational(1), kSigma);
    Smts x = q && coin(rng) ? random_refinement(rng, *q) : instantiate(rng, random_skeleton(rng, 3, false));
    bool left = q && refines(x, *q);
    bool right = refines(compose(s, x), tt);
    ++t.checked;
    pos += right;
    if (left != right)
      t.fail(std::string("X <= T//S is ") + (left ? "true" : "false") + " but S||X <= T is " +
             (right ? "true" : "false") + "\n" + show(s) + show(tt) + show(x));
  }
  if (positives) *positives = pos;
  return t;
}

/// d(X, T//S) >= d(S||X, T), and the reverse direction counted separately.
inline Tally quotient_distance(Rng& rng, long n, long* reverse_violations, long* reverse_checked) {
  Tally t{"d(X, T//S) >= d(S||X, T) (deterministic divisor)"};
  long rv = 0, rc = 0;
  while (t.checked < n) {
    auto sk = random_skeleton(rng, 3, true);
    auto s = instantiate(rng, sk);
    auto tt = instantiate(rng, random_skeleton(rng, 3, false));
    auto q = quotient(tt, s, Rational(1), kSigma);
    if (!q) continue;
    auto x = random_refinement(rng, *q);
    if (coin(rng)) x = widen(x, Rational(uniform(rng, 1, 2)));
    bool sat_l = false, sat_r = false;
    auto lhs = dist(x, *q, &sat_l), rhs = dist(compose(s, x), tt, &sat_r);
    if ((rhs.is_inf() && sat_r) || (lhs.is_inf() && sat_l)) {
      ++t.inconclusive;
      continue;
    }
    ++t.checked;
    if (lhs < rhs) t.fail(to_string(lhs) + " < " + to_string(rhs) + "\n" + show(s) + show(tt) + show(x));
    ++rc;
    if (lhs > rhs) ++rv;
  }
  *reverse_violations = rv;
  *reverse_checked = rc;
  return t;
}

inline Tally conjunction_glb(Rng& rng, long n) {
  Tally t{"conjunction is a greatest lower bound"};
  while (t.checked < n) {
    auto u = instantiate(rng, random_skeleton(rng, 3, true));
    auto s = random_abstraction(rng, u, true);
    auto tt = random_abstraction(rng, u, false);
    if (coin(rng)) std::swap(s, tt);
    if (coin(rng, 0.3)) tt = instantiate(rng, random_skeleton(rng, 3, false));
    auto c = conjoin(s, tt);
    if (c) {
      ++t.checked;
      if (!refines(*c, s) || !refines(*c, tt)) t.fail("S&T is not below both\n" + show(s) + show(tt));
    }
    if ((is_deterministic(s) || is_deterministic(tt)) && refines(u, s) && refines(u, tt)) {
      ++t.checked;
      if (!c)
        t.fail("S&T missing although U is below both\n" + show(u) + show(s) + show(tt));
      else if (!refines(u, *c))
        t.fail("U not below S&T\n" + show(u) + show(s) + show(tt));
    }
  }
  return t;
}

/// Every pair of may labels of the same kind meets, in every state pair
/// reachable through such meetings. This is what relaxed boundedness asks
/// of the widened labels.
inline bool labels_meet(const Smts& s, const Smts& t) {
  std::set<std::pair<StateId, StateId>> seen{{s.initial, t.initial}};
  std::vector<std::pair<StateId, StateId>> stack(seen.begin(), seen.end());
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    for (const auto& k : s.may)
      if (k.src == a)
        for (const auto& l : t.may)
          if (l.src == b && k.label.action == l.label.action) {
            if (!conjoin_label(k.label, l.label)) return false;
            if (seen.insert({k.dst, l.dst}).second) stack.push_back({k.dst, l.dst});
          }
  }
  return true;
}

/// Smallest (n, m), by max then sum, for which the widened labels meet and
/// the widened conjunction exists; nullopt above `limit`.
inline std::optional<std::pair<long, long>> minimal_widening(const Smts& s, const Smts& t, long limit = 6) {
  for (long top = 0; top <= limit; ++top)
    for (long sum = top; sum <= 2 * top; ++sum)
      for (long n = sum - top; n <= top; ++n) {
        long m = sum - n;
        if (std::max(n, m) != top) continue;
        auto ws = widen(s, Rational(n)), wt = widen(t, Rational(m));
        if (labels_meet(ws, wt) && conjoin(ws, wt)) return std::pair{n, m};
      }
  return std::nullopt;
}

inline Tally conjunction_relaxed(Rng& rng, long n) {
  Tally t{"widened conjunction is within max distance plus widening"};
  while (t.checked < n) {
    auto sk = random_skeleton(rng, 3, true);
    auto s = instantiate(rng, sk), tt = instantiate(rng, sk), u = instantiate(rng, sk);
    auto du_s = dist(u, s), du_t = dist(u, tt);
    if (du_s.is_inf() || du_t.is_inf()) continue;
    auto w = minimal_widening(s, tt);
    if (!w) continue;
    auto c = conjoin(widen(s, Rational(w->first)), widen(tt, Rational(w->second)));
    GridConfig g = auto_grid(u, *c);
    auto bound = eval_zero(c_relaxed(constant(g, w->first), constant(g, w->second), h_mod(u, s, g).table.at({u.initial, s.initial}),
                                     h_mod(u, tt, g).table.at({u.initial, tt.initial})));
    bool sat = false;
    auto d = dist(u, *c, &sat);
    if (d.is_inf() && sat && bound.is_finite()) {
      ++t.inconclusive;
      continue;
    }
    ++t.checked;
    if (d > bound)
      t.fail(to_string(d) + " > " + to_string(bound) + " with widenings " + std::to_string(w->first) + "," +
             std::to_string(w->second) + "\n" + show(u) + show(s) + show(tt));
  }
  return t;
}

/// Thorough oracle below the modal distance; equal to the modal distance of
/// the unfoldings when the right side is deterministic.
inline Tally thorough_vs_modal(Rng& rng, long n) {
  Tally t{"thorough oracle below modal distance, equal for deterministic right side"};
  const std::size_t depth = 2;
  while (t.checked < n) {
    bool det = coin(rng);
    auto sk = random_skeleton(rng, 3, det);
    auto s = instantiate(rng, sk, 2), tt = instantiate(rng, sk, 2);
    for (auto* x : {&s, &tt})
      for (auto* edges : {&x->may, &x->must})
        for (auto& e : *edges)
          if (e.label.window.hi_inf()) e.label.window.hi = e.label.window.lo + Rational(2);
    s.normalize();
    tt.normalize();
    if (!check_consistency(s).empty() || !check_consistency(tt).empty()) continue;
    GridConfig g = GridConfig::for_constant(Rational(6));
    ExtRational oracle;
    try {
      oracle = thorough_distance_oracle(s, tt, depth, g, 4000);
    } catch (const BudgetError&) {
      ++t.inconclusive;
      continue;
    }
    auto dm = h_mod(s, tt, g).value;
    ++t.checked;
    if (oracle > dm) t.fail("oracle " + to_string(oracle) + " > " + to_string(dm) + "\n" + show(s) + show(tt));
    if (is_deterministic(tt)) {
      auto du = h_mod(unfold(s, depth), unfold(tt, depth), g).value;
      if (oracle != du)
        t.fail("deterministic right side: oracle " + to_string(oracle) + " != " + to_string(du) + "\n" + show(s) + show(tt));
    }
  }
  return t;
}

// ---------------------------------------------------------------- MECS

struct Coherence {
  Tally compose{"semantics of the product equals the product of semantics"};
  Tally conjoin{"semantics of the conjunction equals the conjunction of semantics"};
  Tally quotient{"semantics of the quotient equals the quotient of semantics"};
};

inline std::string dist_pair(const Smts& a, const Smts& b, const GridConfig& g) {
  return to_string(h_mod(a, b, g).value) + "/" + to_string(h_mod(b, a, g).value);
}

/// Compares the syntactic constructions with their semantic counterparts;
/// `label` names the pair in failure messages.
inline void coherence(const Mecs& a, const Mecs& b, const std::string& label, Coherence& out,
                      bool check_quotient = true) {
  // Constructed guards pin valuations up to the larger cap, so compare one
  // step above it.
  SemanticsOptions o = common_options(a, b);
  o.clock_cap += 1;
  GridConfig g = GridConfig::for_constant(Rational(o.clock_cap));
  Smts sa = semantics(a, o), sb = semantics(b, o);
  auto zero_both = [&](const Smts& x, const Smts& y) {
    return h_mod(x, y, g).value == ExtRational(0) && h_mod(y, x, g).value == ExtRational(0);
  };

  Smts cs = semantics(mecs_compose(a, b), o), cp = tmspec::compose(sa, sb);
  ++out.compose.checked;
  if (!zero_both(cs, cp)) out.compose.fail(label + ": " + dist_pair(cs, cp, g));

  auto cj = mecs_conjoin(a, b, o.clock_cap - 1);
  auto cj2 = tmspec::conjoin(sa, sb);
  ++out.conjoin.checked;
  if (cj.has_value() != cj2.has_value())
    out.conjoin.fail(label + ": syntactic " + (cj ? "exists" : "missing") + ", semantic " + (cj2 ? "exists" : "missing"));
  else if (cj && !zero_both(semantics(*cj, o), *cj2))
    out.conjoin.fail(label + ": " + dist_pair(semantics(*cj, o), *cj2, g));

  if (!check_quotient) return;
  std::set<std::string> sigma = a.alphabet;
  sigma.insert(b.alphabet.begin(), b.alphabet.end());
  auto q = mecs_quotient(a, b, o.clock_cap - 1);
  auto q2 = tmspec::quotient(sa, sb, o.step, sigma);
  ++out.quotient.checked;
  if (q.has_value() != q2.has_value())
    out.quotient.fail(label + ": syntactic " + (q ? "exists" : "missing") + ", semantic " + (q2 ? "exists" : "missing"));
  else if (q && !zero_both(semantics(*q, o), *q2))
    out.quotient.fail(label + ": " + dist_pair(semantics(*q, o), *q2, g));
}

}  // namespace tmtest
