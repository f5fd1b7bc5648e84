#include "tmspec/mecs.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace tmspec {

ClockConstraint& ClockConstraint::at_most(const std::string& clock, long k) {
  if (k < 0) throw ConfigError("clock bound must be a natural number");
  auto w = on(clock).intersect(Interval(Rational(0), Rational(k)));
  if (!w) throw ConfigError("unsatisfiable bounds on clock '" + clock + "'");
  bounds[clock] = *w;
  return *this;
}

ClockConstraint& ClockConstraint::at_least(const std::string& clock, long k) {
  if (k < 0) throw ConfigError("clock bound must be a natural number");
  auto w = on(clock).intersect(Interval::from(Rational(k)));
  if (!w) throw ConfigError("unsatisfiable bounds on clock '" + clock + "'");
  if (*w == Interval::all())
    bounds.erase(clock);
  else
    bounds[clock] = *w;
  return *this;
}

Interval ClockConstraint::on(const std::string& clock) const {
  auto it = bounds.find(clock);
  return it == bounds.end() ? Interval::all() : it->second;
}

std::optional<ClockConstraint> ClockConstraint::conjoin(const ClockConstraint& o) const {
  ClockConstraint out = *this;
  for (const auto& [c, w] : o.bounds) {
    auto x = out.on(c).intersect(w);
    if (!x) return std::nullopt;
    out.bounds[c] = *x;
  }
  return out;
}

bool ClockConstraint::subset_of(const ClockConstraint& o) const {
  for (const auto& [c, w] : o.bounds)
    if (!on(c).subset_of(w)) return false;
  return true;
}

long ClockConstraint::max_constant() const {
  long m = 0;
  for (const auto& [c, w] : bounds) {
    m = std::max(m, static_cast<long>(w.lo.numerator() / w.lo.denominator()));
    if (w.hi) m = std::max(m, static_cast<long>(w.hi->numerator() / w.hi->denominator()));
  }
  return m;
}

std::string to_string(const ClockConstraint& g) {
  if (g.is_true()) return "true";
  std::string out;
  auto atom = [&](const std::string& s) {
    if (!out.empty()) out += " & ";
    out += s;
  };
  for (const auto& [c, w] : g.bounds) {
    if (w.lo > 0) atom(c + ">=" + to_string(w.lo));
    if (w.hi) atom(c + "<=" + to_string(*w.hi));
  }
  return out;
}

bool constraint_sat(const IntervalValuation& v, const ClockConstraint& g) {
  for (const auto& [c, w] : g.bounds) {
    auto it = v.find(c);
    Interval x = it == v.end() ? Interval::point(Rational(0)) : it->second;
    if (!x.intersect(w)) return false;
  }
  return true;
}

std::size_t Mecs::add_location(std::string name) {
  locations.push_back(std::move(name));
  return locations.size() - 1;
}

std::optional<std::size_t> Mecs::find(const std::string& name) const {
  auto it = std::find(locations.begin(), locations.end(), name);
  if (it == locations.end()) return std::nullopt;
  return static_cast<std::size_t>(it - locations.begin());
}

namespace {

auto edge_key(const MecsEdge& e) {
  std::vector<std::tuple<std::string, Interval>> g(e.guard.bounds.begin(), e.guard.bounds.end());
  return std::make_tuple(e.src, e.action, std::move(g), e.dst);
}

}  // namespace

void Mecs::normalize() {
  for (auto* v : {&may, &must}) {
    std::sort(v->begin(), v->end(), [](const MecsEdge& x, const MecsEdge& y) { return edge_key(x) < edge_key(y); });
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
}

long Mecs::max_constant() const {
  long m = 0;
  for (const auto* v : {&may, &must})
    for (const auto& e : *v) m = std::max(m, e.guard.max_constant());
  return m;
}

std::vector<std::string> Mecs::guard_clocks() const {
  std::set<std::string> out;
  for (const auto* v : {&may, &must})
    for (const auto& e : *v)
      for (const auto& [c, w] : e.guard.bounds) out.insert(c);
  return {out.begin(), out.end()};
}

void Mecs::validate() const {
  if (locations.empty()) throw ConfigError("specification without locations");
  if (initial >= size()) throw ConfigError("initial location out of range");
  for (const auto* v : {&may, &must})
    for (const auto& e : *v) {
      if (e.src >= size() || e.dst >= size()) throw ConfigError("edge endpoint out of range");
      if (!alphabet.contains(e.action)) throw ConfigError("action '" + e.action + "' not in the alphabet");
      if (e.action == kDelay) throw ConfigError("'" + kDelay + "' is reserved for time passage");
      for (const auto& [c, w] : e.guard.bounds) {
        if (!alphabet.contains(c)) throw ConfigError("guard on unknown clock '" + c + "'");
        if (w.lo.denominator() != 1 || (w.hi && w.hi->denominator() != 1))
          throw ConfigError("guard constants must be natural numbers");
      }
    }
  for (const auto& m : must) {
    bool covered = std::any_of(may.begin(), may.end(), [&](const MecsEdge& e) {
      return e.src == m.src && e.dst == m.dst && e.action == m.action && m.guard.subset_of(e.guard);
    });
    if (!covered)
      throw ConfigError("must edge " + locations[m.src] + " -> " + locations[m.dst] + " on '" + m.action +
                        "' has no covering may edge");
  }
}

namespace {

std::vector<std::vector<const MecsEdge*>> out_edges(const Mecs& a, const std::vector<MecsEdge>& edges) {
  std::vector<std::vector<const MecsEdge*>> out(a.size());
  for (const auto& e : edges) out[e.src].push_back(&e);
  return out;
}

// Guard bounds in ticks; hi < 0 means unbounded.
struct TickGuard {
  std::size_t clock;
  Ticks lo, hi;
};

// Clock values on a tick grid, saturating at `cap` (which reads as "cap or
// more"). Each clock holds an interval; point delays keep them degenerate.
using Valuation = std::vector<std::pair<Ticks, Ticks>>;

bool sat(const Valuation& v, const std::vector<TickGuard>& g, Ticks cap) {
  for (const auto& b : g) {
    auto [lo, hi] = v[b.clock];
    bool open = hi >= cap;
    if (!open && hi < b.lo) return false;
    if (b.hi >= 0 && lo > b.hi) return false;
  }
  return true;
}

std::string state_name(const std::string& loc, const std::vector<std::string>& clocks, const Valuation& v,
                       const Rational& step) {
  if (clocks.empty()) return loc;
  std::string s = loc + "[";
  for (std::size_t i = 0; i < clocks.size(); ++i) {
    if (i) s += ",";
    s += clocks[i] + "=" + to_string(step * v[i].first);
    if (v[i].second != v[i].first) s += ".." + to_string(step * v[i].second);
  }
  return s + "]";
}

Ticks ticks_of(const Rational& r, const Rational& step, const char* what) {
  Rational t = r / step;
  if (t.denominator() != 1) throw ConfigError(std::string(what) + " " + to_string(r) + " is not on the grid");
  return t.numerator();
}

}  // namespace

Smts semantics(const Mecs& a, const SemanticsOptions& opt) {
  a.validate();
  if (opt.step <= 0) throw ConfigError("grid step must be positive");
  long cap_units = opt.clock_cap ? opt.clock_cap : a.max_constant() + 1;
  if (cap_units <= a.max_constant())
    throw ConfigError("clock cap " + std::to_string(cap_units) + " must exceed the largest guard constant " +
                      std::to_string(a.max_constant()));
  const Ticks cap = ticks_of(Rational(cap_units), opt.step, "clock cap");
  const auto clocks = a.guard_clocks();
  std::map<std::string, std::size_t> clock_index;
  for (std::size_t i = 0; i < clocks.size(); ++i) clock_index[clocks[i]] = i;

  auto tick_guard = [&](const ClockConstraint& g) {
    std::vector<TickGuard> out;
    for (const auto& [c, w] : g.bounds)
      out.push_back({clock_index.at(c), ticks_of(w.lo, opt.step, "guard constant"),
                     w.hi ? ticks_of(*w.hi, opt.step, "guard constant") : -1});
    return out;
  };
  struct TickEdge {
    std::string action;
    std::vector<TickGuard> guard;
    std::size_t dst;
    bool must;
  };
  std::vector<std::vector<TickEdge>> edges(a.size());
  for (const auto& e : a.may) edges[e.src].push_back({e.action, tick_guard(e.guard), e.dst, false});
  for (const auto& e : a.must) edges[e.src].push_back({e.action, tick_guard(e.guard), e.dst, true});

  std::vector<std::pair<Ticks, Ticks>> delays;
  for (Ticks l = 0; l <= cap; ++l) {
    if (opt.delays == DelayMode::point) {
      delays.emplace_back(l, l);
    } else {
      for (Ticks r = l; r <= cap; ++r) delays.emplace_back(l, r);
    }
  }

  Smts out;
  std::map<std::pair<std::size_t, Valuation>, StateId> index;
  std::vector<std::pair<std::size_t, Valuation>> states;
  auto intern = [&](std::size_t q, Valuation v) {
    auto [it, fresh] = index.try_emplace({q, v}, out.size());
    if (fresh) {
      if (out.size() >= opt.state_budget) throw BudgetError("semantics exceeds the state budget");
      out.add_state(state_name(a.locations[q], clocks, v, opt.step));
      states.emplace_back(q, std::move(v));
    }
    return it->second;
  };
  out.initial = intern(a.initial, Valuation(clocks.size(), {0, 0}));
  for (StateId s = 0; s < out.size(); ++s) {
    auto [q, v] = states[s];
    for (const auto& e : edges[q]) {
      if (!sat(v, e.guard, cap)) continue;
      Valuation w = v;
      if (auto it = clock_index.find(e.action); it != clock_index.end()) w[it->second] = {0, 0};
      StateId t = intern(e.dst, std::move(w));
      if (e.must)
        out.add_must(s, TimedLabel::act(e.action), t);
      else
        out.add_may(s, TimedLabel::act(e.action), t);
    }
    for (auto [l, r] : delays) {
      Valuation w = v;
      for (auto& [lo, hi] : w) {
        lo = std::min(lo + l, cap);
        hi = std::min(hi + r, cap);
      }
      StateId t = intern(q, std::move(w));
      out.add_both(s, TimedLabel::delay(opt.step * l, opt.step * r), t);
    }
  }
  out.normalize();
  return out;
}

Mecs mecs_compose(const Mecs& a, const Mecs& b) {
  a.validate();
  b.validate();
  Mecs out;
  out.alphabet = a.alphabet;
  out.alphabet.insert(b.alphabet.begin(), b.alphabet.end());
  auto a_may = out_edges(a, a.may), a_must = out_edges(a, a.must);
  auto b_may = out_edges(b, b.may), b_must = out_edges(b, b.must);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto intern = [&](std::size_t p, std::size_t q) {
    auto [it, fresh] = index.try_emplace({p, q}, out.size());
    if (fresh) {
      out.add_location("(" + a.locations[p] + "," + b.locations[q] + ")");
      pairs.emplace_back(p, q);
    }
    return it->second;
  };
  out.initial = intern(a.initial, b.initial);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto [p, q] = pairs[i];
    for (const auto* x : a_may[p])
      for (const auto* y : b_may[q])
        if (x->action == y->action)
          if (auto g = x->guard.conjoin(y->guard)) out.may.push_back({i, x->action, *g, intern(x->dst, y->dst)});
    for (const auto* x : a_must[p])
      for (const auto* y : b_must[q])
        if (x->action == y->action)
          if (auto g = x->guard.conjoin(y->guard)) out.must.push_back({i, x->action, *g, intern(x->dst, y->dst)});
  }
  out.normalize();
  return out;
}

namespace {

// Removes locations that must-reach a bad one and then the unreachable rest.
std::optional<Mecs> prune_locations(const Mecs& m, const std::set<std::size_t>& bad) {
  std::vector<std::vector<std::size_t>> must_pred(m.size());
  for (const auto& e : m.must) must_pred[e.dst].push_back(e.src);
  std::vector<char> doomed(m.size(), 0);
  std::vector<std::size_t> stack(bad.begin(), bad.end());
  for (auto x : stack) doomed[x] = 1;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto p : must_pred[x])
      if (!doomed[p]) {
        doomed[p] = 1;
        stack.push_back(p);
      }
  }
  if (doomed[m.initial]) return std::nullopt;

  std::vector<std::vector<std::size_t>> succ(m.size());
  for (const auto& e : m.may)
    if (!doomed[e.src] && !doomed[e.dst]) succ[e.src].push_back(e.dst);
  std::vector<char> keep(m.size(), 0);
  std::vector<std::size_t> todo{m.initial};
  keep[m.initial] = 1;
  while (!todo.empty()) {
    auto x = todo.back();
    todo.pop_back();
    for (auto y : succ[x])
      if (!keep[y]) {
        keep[y] = 1;
        todo.push_back(y);
      }
  }
  Mecs out;
  out.alphabet = m.alphabet;
  std::vector<std::size_t> remap(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (keep[i]) remap[i] = out.add_location(m.locations[i]);
  out.initial = remap[m.initial];
  for (const auto& e : m.may)
    if (keep[e.src] && keep[e.dst]) out.may.push_back({remap[e.src], e.action, e.guard, remap[e.dst]});
  for (const auto& e : m.must)
    if (keep[e.src] && keep[e.dst]) out.must.push_back({remap[e.src], e.action, e.guard, remap[e.dst]});
  out.normalize();
  return out;
}

// Product of two specifications whose locations are additionally indexed by
// the (integer, saturating) valuation on entry. At delay d after entry the
// valuation is min(w + d, cap), and every generated edge carries the guard
// pinning exactly that valuation, so a location-level rule can depend on the
// valuation just like the corresponding rule on the semantics.
class EntryUnfolding {
 public:
  struct Step {
    std::string action;
    bool must;
    std::optional<std::pair<std::size_t, std::size_t>> target;  // nullopt: universal location
  };

  EntryUnfolding(const Mecs& a, const Mecs& b, long cap) : a_(a), b_(b), cap_(cap) {
    std::set<std::string> cl;
    for (const auto* m : {&a, &b})
      for (const auto& c : m->guard_clocks()) cl.insert(c);
    clocks_.assign(cl.begin(), cl.end());
    out.alphabet = a.alphabet;
    out.alphabet.insert(b.alphabet.begin(), b.alphabet.end());
    if (cap_ == 0) cap_ = std::max(a.max_constant(), b.max_constant()) + 1;
    if (cap_ <= std::max(a.max_constant(), b.max_constant()))
      throw ConfigError("clock cap must exceed every guard constant");
  }

  bool enabled(const ClockConstraint& g, const std::vector<long>& v) const {
    for (std::size_t i = 0; i < clocks_.size(); ++i) {
      Interval w = g.on(clocks_[i]);
      bool open = v[i] >= cap_;
      if (Rational(v[i]) < w.lo && !open) return false;
      if (w.hi && Rational(v[i]) > *w.hi) return false;
    }
    return true;
  }

  // `rule` maps (p, q, valuation) to the location's steps and sets `bad`.
  template <typename Rule>
  std::optional<Mecs> run(Rule rule) {
    out.initial = intern(a_.initial, b_.initial, std::vector<long>(clocks_.size(), 0));
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (universal_ == i) continue;
      auto [p, q, w] = keys_[i];
      for (long d = 0;; ++d) {
        std::vector<long> v(w.size());
        bool all_capped = true;
        for (std::size_t k = 0; k < w.size(); ++k) {
          v[k] = std::min(w[k] + d, cap_);
          all_capped &= v[k] == cap_;
        }
        ClockConstraint guard = pin(v);
        bool bad = false;
        for (auto& s : rule(p, q, v, bad)) {
          std::size_t dst;
          if (s.target) {
            std::vector<long> u = v;
            auto it = std::find(clocks_.begin(), clocks_.end(), s.action);
            if (it != clocks_.end()) u[static_cast<std::size_t>(it - clocks_.begin())] = 0;
            dst = intern(s.target->first, s.target->second, std::move(u));
          } else {
            dst = universal();
          }
          if (s.must)
            out.add_must(i, s.action, guard, dst);
          else
            out.add_may(i, s.action, guard, dst);
        }
        if (bad) bad_.insert(i);
        if (all_capped) break;
      }
    }
    out.normalize();
    return prune_locations(out, bad_);
  }

 private:
  ClockConstraint pin(const std::vector<long>& v) const {
    ClockConstraint g;
    for (std::size_t k = 0; k < v.size(); ++k) {
      g.at_least(clocks_[k], v[k]);
      if (v[k] < cap_) g.at_most(clocks_[k], v[k]);
    }
    return g;
  }

  std::size_t intern(std::size_t p, std::size_t q, std::vector<long> w) {
    auto key = std::make_tuple(p, q, w);
    auto [it, fresh] = index_.try_emplace(key, out.size());
    if (fresh) {
      std::string name = "(" + a_.locations[p] + "," + b_.locations[q] + ")";
      if (!clocks_.empty()) {
        name += "[";
        for (std::size_t k = 0; k < w.size(); ++k) name += (k ? "," : "") + clocks_[k] + "=" + std::to_string(w[k]);
        name += "]";
      }
      out.add_location(std::move(name));
      keys_.push_back(std::move(key));
    }
    return it->second;
  }

  // Accepts every action at every valuation; keeps a dummy key so location
  // and key indices stay aligned.
  std::size_t universal() {
    if (!universal_) {
      universal_ = out.add_location("univ");
      keys_.emplace_back(0, 0, std::vector<long>{});
      for (const auto& c : out.alphabet) out.add_may(*universal_, c, ClockConstraint::truth(), *universal_);
    }
    return *universal_;
  }

 public:
  Mecs out;

 private:
  const Mecs& a_;
  const Mecs& b_;
  long cap_;
  std::vector<std::string> clocks_;
  std::map<std::tuple<std::size_t, std::size_t, std::vector<long>>, std::size_t> index_;
  std::vector<std::tuple<std::size_t, std::size_t, std::vector<long>>> keys_;
  std::set<std::size_t> bad_;
  std::optional<std::size_t> universal_;
};

}  // namespace

std::optional<Mecs> mecs_quotient(const Mecs& b, const Mecs& a, long clock_cap) {
  b.validate();
  a.validate();
  auto b_may = out_edges(b, b.may), b_must = out_edges(b, b.must);
  auto a_may = out_edges(a, a.may), a_must = out_edges(a, a.must);
  EntryUnfolding u(b, a, clock_cap);
  const auto sigma = u.out.alphabet;
  return u.run([&](std::size_t p, std::size_t q, const std::vector<long>& v, bool& bad) {
    std::vector<EntryUnfolding::Step> steps;
    for (const auto& c : sigma) {
      auto live = [&](const std::vector<const MecsEdge*>& es) {
        std::vector<const MecsEdge*> r;
        for (const auto* e : es)
          if (e->action == c && u.enabled(e->guard, v)) r.push_back(e);
        return r;
      };
      auto bm = live(b_may[p]), am = live(a_may[q]), bM = live(b_must[p]), aM = live(a_must[q]);
      for (const auto* x : bm)
        for (const auto* y : am) steps.push_back({c, false, std::make_pair(x->dst, y->dst)});
      for (const auto* x : bM) {
        if (aM.empty()) bad = true;
        for (const auto* y : aM) steps.push_back({c, true, std::make_pair(x->dst, y->dst)});
      }
      // nothing the divisor can do here, so anything goes
      if (am.empty()) steps.push_back({c, false, std::nullopt});
    }
    return steps;
  });
}

std::optional<Mecs> mecs_conjoin(const Mecs& a, const Mecs& b, long clock_cap) {
  a.validate();
  b.validate();
  auto a_may = out_edges(a, a.may), a_must = out_edges(a, a.must);
  auto b_may = out_edges(b, b.may), b_must = out_edges(b, b.must);
  EntryUnfolding u(a, b, clock_cap);
  const auto sigma = u.out.alphabet;
  return u.run([&](std::size_t p, std::size_t q, const std::vector<long>& v, bool& bad) {
    std::vector<EntryUnfolding::Step> steps;
    for (const auto& c : sigma) {
      auto live = [&](const std::vector<const MecsEdge*>& es) {
        std::vector<const MecsEdge*> r;
        for (const auto* e : es)
          if (e->action == c && u.enabled(e->guard, v)) r.push_back(e);
        return r;
      };
      auto am = live(a_may[p]), bm = live(b_may[q]), aM = live(a_must[p]), bM = live(b_must[q]);
      for (const auto* x : aM) {
        if (bm.empty()) bad = true;
        for (const auto* y : bm) steps.push_back({c, true, std::make_pair(x->dst, y->dst)});
      }
      for (const auto* y : bM) {
        if (am.empty()) bad = true;
        for (const auto* x : am) steps.push_back({c, true, std::make_pair(x->dst, y->dst)});
      }
      for (const auto* x : am)
        for (const auto* y : bm) steps.push_back({c, false, std::make_pair(x->dst, y->dst)});
    }
    return steps;
  });
}

Mecs mecs_widen(const Mecs& a, long n) {
  if (n < 0) throw ConfigError("widening radius must be non-negative");
  Mecs out = a;
  for (auto* v : {&out.may, &out.must})
    for (auto& e : *v) {
      ClockConstraint g;
      for (const auto& [c, w] : e.guard.bounds) {
        Rational lo = w.lo > n ? w.lo - n : Rational(0);
        std::optional<Rational> hi;
        if (w.hi) hi = *w.hi + n;
        if (lo > 0 || hi) g.bounds[c] = Interval(lo, hi);
      }
      e.guard = std::move(g);
    }
  out.normalize();
  return out;
}

bool strongly_deterministic(const Mecs& a) {
  std::map<std::pair<std::size_t, std::string>, const MecsEdge*> seen;
  for (const auto& e : a.may) {
    auto [it, fresh] = seen.try_emplace({e.src, e.action}, &e);
    if (!fresh && (it->second->dst != e.dst || !(it->second->guard == e.guard))) return false;
  }
  return true;
}

SemanticsOptions common_options(const Mecs& a, const Mecs& b, SemanticsOptions opt) {
  if (opt.clock_cap == 0) opt.clock_cap = std::max(a.max_constant(), b.max_constant()) + 1;
  return opt;
}

DistanceResult mecs_distance(const Mecs& a, const Mecs& b, const SemanticsOptions& opt) {
  auto o = common_options(a, b, opt);
  Smts sa = semantics(a, o), sb = semantics(b, o);
  return h_mod(sa, sb, GridConfig::for_constant(Rational(o.clock_cap), o.step));
}

}  // namespace tmspec
