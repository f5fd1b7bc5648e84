#include <algorithm>
#include <deque>
#include <unordered_map>

#include "tmspec/smts.hpp"

namespace tmspec {

std::strong_ordering operator<=>(const Transition& a, const Transition& b) {
  if (auto c = a.src <=> b.src; c != 0) return c;
  if (auto c = a.label <=> b.label; c != 0) return c;
  return a.dst <=> b.dst;
}

StateId Smts::add_state(std::string name) {
  names.push_back(std::move(name));
  return names.size() - 1;
}

std::optional<StateId> Smts::find(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<StateId>(it - names.begin());
}

void Smts::normalize() {
  for (auto* v : {&may, &must}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
}

std::set<std::string> Smts::alphabet() const {
  std::set<std::string> out;
  for (const auto* v : {&may, &must})
    for (const auto& tr : *v)
      if (!tr.label.is_delay()) out.insert(tr.label.action);
  return out;
}

Rational Smts::max_constant() const {
  Rational m(0);
  for (const auto* v : {&may, &must})
    for (const auto& tr : *v) {
      m = std::max(m, tr.label.window.lo);
      if (tr.label.window.hi) m = std::max(m, *tr.label.window.hi);
    }
  return m;
}

void Smts::validate() const {
  if (names.empty()) throw ConfigError("system without states");
  if (initial >= size()) throw ConfigError("initial state out of range");
  for (const auto* v : {&may, &must})
    for (const auto& tr : *v) {
      if (tr.src >= size() || tr.dst >= size()) throw ConfigError("transition endpoint out of range");
      tr.label.validate();
    }
}

std::vector<Transition> check_consistency(const Smts& s) {
  std::vector<Transition> bad;
  for (const auto& m : s.must) {
    bool covered = std::any_of(s.may.begin(), s.may.end(), [&](const Transition& k) {
      return k.src == m.src && k.dst == m.dst && label_refines(m.label, k.label);
    });
    if (!covered) bad.push_back(m);
  }
  return bad;
}

GridConfig auto_grid(const Smts& s, const Smts& t, const Rational& step) {
  return GridConfig::for_constant(std::max(s.max_constant(), t.max_constant()), step);
}

namespace {

std::vector<std::vector<const Transition*>> out_edges(const Smts& s, const std::vector<Transition>& edges) {
  std::vector<std::vector<const Transition*>> out(s.size());
  for (const auto& tr : edges) out[tr.src].push_back(&tr);
  return out;
}

using PairKey = std::uint64_t;
PairKey key(StateId a, StateId b) { return (static_cast<PairKey>(a) << 32) | static_cast<PairKey>(b); }

// The attacker's moves from a pair, each with the defender's admissible
// answers. May clauses come from the left system, must clauses from the
// right one.
struct Option {
  const TimedLabel* left;
  const TimedLabel* right;
  std::size_t succ;
};
struct Clause {
  const Transition* move;
  bool left_may;
  std::vector<Option> options;
};

// Pairs reachable from the initial pair through answers accepted by `admit`.
template <typename Admit>
struct PairGraph {
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<std::vector<Clause>> clauses;
  std::vector<std::vector<std::size_t>> preds;

  PairGraph(const Smts& s, const Smts& t, Admit admit) {
    auto s_may = out_edges(s, s.may), s_must = out_edges(s, s.must);
    auto t_may = out_edges(t, t.may), t_must = out_edges(t, t.must);
    std::unordered_map<PairKey, std::size_t> index;
    auto intern = [&](StateId a, StateId b) {
      auto [it, fresh] = index.try_emplace(key(a, b), pairs.size());
      if (fresh) pairs.emplace_back(a, b);
      return it->second;
    };
    intern(s.initial, t.initial);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [a, b] = pairs[i];
      std::vector<Clause> cl;
      for (const Transition* k : s_may[a]) {
        Clause c{k, true, {}};
        for (const Transition* l : t_may[b])
          if (admit(k->label, l->label)) c.options.push_back({&k->label, &l->label, intern(k->dst, l->dst)});
        cl.push_back(std::move(c));
      }
      for (const Transition* l : t_must[b]) {
        Clause c{l, false, {}};
        for (const Transition* k : s_must[a])
          if (admit(k->label, l->label)) c.options.push_back({&k->label, &l->label, intern(k->dst, l->dst)});
        cl.push_back(std::move(c));
      }
      clauses.push_back(std::move(cl));
    }
    preds.resize(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (const auto& c : clauses[i])
        for (const auto& o : c.options) preds[o.succ].push_back(i);
    for (auto& p : preds) {
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
    }
  }
};

template <typename Admit>
PairGraph(const Smts&, const Smts&, Admit) -> PairGraph<Admit>;

}  // namespace

RefinementWitness boolean_refines(const Smts& s, const Smts& t) {
  PairGraph g(s, t, [](const TimedLabel& k, const TimedLabel& l) { return label_refines(k, l); });
  const std::size_t n = g.pairs.size();
  constexpr std::size_t kAlive = static_cast<std::size_t>(-1);
  std::vector<std::size_t> died(n, kAlive);
  std::vector<const Clause*> reason(n, nullptr);

  for (std::size_t round = 0;; ++round) {
    std::vector<std::size_t> dying;
    for (std::size_t i = 0; i < n; ++i) {
      if (died[i] != kAlive) continue;
      for (const auto& c : g.clauses[i]) {
        bool answered = std::any_of(c.options.begin(), c.options.end(),
                                    [&](const Option& o) { return died[o.succ] == kAlive; });
        if (!answered) {
          dying.push_back(i);
          reason[i] = &c;
          break;
        }
      }
    }
    if (dying.empty()) break;
    for (auto i : dying) died[i] = round;
  }

  RefinementWitness w;
  w.holds = died[0] == kAlive;
  if (w.holds) {
    for (std::size_t i = 0; i < n; ++i)
      if (died[i] == kAlive) w.relation.insert(g.pairs[i]);
    return w;
  }
  // Follow the attacker's refuting move; the defender takes the answer that
  // survived longest, so the death round strictly decreases along the path.
  for (std::size_t cur = 0;;) {
    const Clause* c = reason[cur];
    w.counterexample.push_back({g.pairs[cur].first, g.pairs[cur].second, c->left_may ? "left-may" : "right-must",
                                *c->move});
    if (c->options.empty()) break;
    auto best = std::max_element(c->options.begin(), c->options.end(), [&](const Option& a, const Option& b) {
      return died[a.succ] < died[b.succ];
    });
    cur = best->succ;
  }
  return w;
}

DistanceResult h_mod(const Smts& s, const Smts& t, const GridConfig& grid) {
  grid.validate();
  s.validate();
  t.validate();
  PairGraph g(s, t, [](const TimedLabel& k, const TimedLabel& l) { return k.action == l.action; });
  const std::size_t n = g.pairs.size();
  const Ticks dmax = grid.lead_ticks();
  const Ticks cap = grid.cap_ticks();
  const auto width = static_cast<std::size_t>(2 * dmax + 1);

  // Tick windows per option, converted once.
  struct TickOption {
    kernel::TickWindow k, l;
    std::size_t succ;
  };
  std::vector<std::vector<std::vector<TickOption>>> opts(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& c : g.clauses[i]) {
      std::vector<TickOption> v;
      for (const auto& o : c.options)
        v.push_back({kernel::to_ticks(o.left->window, grid), kernel::to_ticks(o.right->window, grid), o.succ});
      opts[i].push_back(std::move(v));
    }

  std::vector<Ticks> h(n * width, 0);
  std::vector<Ticks> beta(width), f(width), inner(width), next(width);
  std::deque<std::size_t> work;
  std::vector<char> queued(n, 1);
  for (std::size_t i = n; i-- > 0;) work.push_back(i);

  DistanceResult res;
  bool clipped = false;
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    queued[i] = 0;
    ++res.iterations;
    std::fill(next.begin(), next.end(), 0);
    for (const auto& clause : opts[i]) {
      std::fill(inner.begin(), inner.end(), kInfTicks);
      for (const auto& o : clause) {
        std::span<const Ticks> alpha(&h[o.succ * width], width);
        kernel::lead_costs(alpha, dmax, cap, beta, &clipped);
        kernel::hausdorff(o.k, o.l, beta, dmax, f, &clipped);
        for (std::size_t x = 0; x < width; ++x) inner[x] = std::min(inner[x], f[x]);
      }
      for (std::size_t x = 0; x < width; ++x) next[x] = std::max(next[x], inner[x]);
    }
    Ticks* cur = &h[i * width];
    bool grew = false;
    for (std::size_t x = 0; x < width; ++x)
      if (next[x] > cur[x]) {
        cur[x] = next[x];
        grew = true;
      }
    if (grew) {
      for (auto p : g.preds[i])
        if (!queued[p]) {
          queued[p] = 1;
          work.push_back(p);
        }
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    res.table.emplace(g.pairs[i], LeadFunction(grid, std::vector<Ticks>(h.begin() + static_cast<std::ptrdiff_t>(i * width),
                                                                         h.begin() + static_cast<std::ptrdiff_t>((i + 1) * width))));
  res.value = grid.value_from_ticks(h[static_cast<std::size_t>(dmax)]);
  // With lead_bound >= value_cap every finite result is exact; only an
  // infinite one can be an artefact of the bounds.
  res.saturated = clipped && (res.value.is_inf() || grid.lead_bound < grid.value_cap);
  return res;
}

}  // namespace tmspec
