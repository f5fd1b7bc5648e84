#include <algorithm>
#include <map>
#include <memory>
#include <unordered_map>

#include "tmspec/smts.hpp"

namespace tmspec {

namespace {

std::vector<std::vector<const Transition*>> out_edges(const Smts& s, const std::vector<Transition>& edges) {
  std::vector<std::vector<const Transition*>> out(s.size());
  for (const auto& tr : edges) out[tr.src].push_back(&tr);
  return out;
}

// Keeps the states flagged in `keep`, renumbering densely.
Smts keep_states(const Smts& s, const std::vector<char>& keep) {
  Smts out;
  std::vector<StateId> remap(s.size(), 0);
  for (StateId i = 0; i < s.size(); ++i)
    if (keep[i]) remap[i] = out.add_state(s.names[i]);
  out.initial = remap[s.initial];
  for (const auto& tr : s.may)
    if (keep[tr.src] && keep[tr.dst]) out.add_may(remap[tr.src], tr.label, remap[tr.dst]);
  for (const auto& tr : s.must)
    if (keep[tr.src] && keep[tr.dst]) out.add_must(remap[tr.src], tr.label, remap[tr.dst]);
  out.normalize();
  return out;
}

// Product exploration helper: interns pairs of states under printable names.
class ProductBuilder {
 public:
  ProductBuilder(const Smts& a, const Smts& b) : a_(a), b_(b) {}

  StateId intern(StateId x, StateId y) {
    auto k = (static_cast<std::uint64_t>(x) << 32) | y;
    auto [it, fresh] = index_.try_emplace(k, out.size());
    if (fresh) {
      out.add_state("(" + a_.names[x] + "," + b_.names[y] + ")");
      pairs.emplace_back(x, y);
    }
    return it->second;
  }

  Smts out;
  std::vector<std::pair<StateId, StateId>> pairs;

 private:
  const Smts& a_;
  const Smts& b_;
  std::unordered_map<std::uint64_t, StateId> index_;
};

}  // namespace

std::optional<Smts> prune(const Smts& s, const std::set<StateId>& bad) {
  std::vector<std::vector<StateId>> must_pred(s.size());
  for (const auto& tr : s.must) must_pred[tr.dst].push_back(tr.src);
  std::vector<char> doomed(s.size(), 0);
  std::vector<StateId> stack(bad.begin(), bad.end());
  for (auto b : stack) doomed[b] = 1;
  while (!stack.empty()) {
    StateId x = stack.back();
    stack.pop_back();
    for (auto p : must_pred[x])
      if (!doomed[p]) {
        doomed[p] = 1;
        stack.push_back(p);
      }
  }
  if (doomed[s.initial]) return std::nullopt;
  std::vector<char> keep(s.size());
  for (StateId i = 0; i < s.size(); ++i) keep[i] = !doomed[i];
  return keep_states(s, keep);
}

Smts restrict_reachable(const Smts& s) {
  auto may = out_edges(s, s.may), must = out_edges(s, s.must);
  std::vector<char> seen(s.size(), 0);
  std::vector<StateId> stack{s.initial};
  seen[s.initial] = 1;
  while (!stack.empty()) {
    StateId x = stack.back();
    stack.pop_back();
    for (const auto* edges : {&may[x], &must[x]})
      for (const auto* tr : *edges)
        if (!seen[tr->dst]) {
          seen[tr->dst] = 1;
          stack.push_back(tr->dst);
        }
  }
  return keep_states(s, seen);
}

Smts compose(const Smts& s, const Smts& t) {
  auto s_may = out_edges(s, s.may), s_must = out_edges(s, s.must);
  auto t_may = out_edges(t, t.may), t_must = out_edges(t, t.must);
  ProductBuilder pb(s, t);
  pb.out.initial = pb.intern(s.initial, t.initial);
  for (StateId i = 0; i < pb.out.size(); ++i) {
    auto [a, b] = pb.pairs[i];
    for (const auto* k : s_may[a])
      for (const auto* l : t_may[b])
        if (auto m = compose_label(k->label, l->label)) pb.out.add_may(i, *m, pb.intern(k->dst, l->dst));
    for (const auto* k : s_must[a])
      for (const auto* l : t_must[b])
        if (auto m = compose_label(k->label, l->label)) pb.out.add_must(i, *m, pb.intern(k->dst, l->dst));
  }
  pb.out.normalize();
  return pb.out;
}

std::optional<Smts> quotient(const Smts& t, const Smts& s, const Rational& step,
                             const std::set<std::string>& extra_alphabet) {
  auto t_may = out_edges(t, t.may), t_must = out_edges(t, t.must);
  auto s_may = out_edges(s, s.may), s_must = out_edges(s, s.must);
  std::set<std::string> sigma = t.alphabet();
  sigma.merge(s.alphabet());
  sigma.insert(extra_alphabet.begin(), extra_alphabet.end());

  ProductBuilder pb(t, s);
  pb.out.initial = pb.intern(t.initial, s.initial);
  std::vector<std::pair<StateId, TimedLabel>> to_universal;
  std::set<StateId> bad;
  for (StateId i = 0; i < pb.out.size(); ++i) {
    auto [a, b] = pb.pairs[i];
    for (const auto* l : t_may[a])
      for (const auto* k : s_may[b])
        if (auto m = quotient_label(l->label, k->label)) pb.out.add_may(i, *m, pb.intern(l->dst, k->dst));
    for (const auto* l : t_must[a]) {
      bool any = false;
      for (const auto* k : s_must[b])
        if (auto m = quotient_label(l->label, k->label)) {
          pb.out.add_must(i, *m, pb.intern(l->dst, k->dst));
          any = true;
        }
      if (!any) bad.insert(i);
    }
    std::vector<TimedLabel> enabled;
    for (const auto* k : s_may[b]) enabled.push_back(k->label);
    for (auto& m : complement_labels(enabled, sigma, step)) to_universal.emplace_back(i, std::move(m));
  }
  StateId u = pb.out.add_state("univ");
  for (auto& [i, m] : to_universal) pb.out.add_may(i, std::move(m), u);
  for (auto& m : complement_labels({}, sigma, step)) pb.out.add_may(u, std::move(m), u);
  pb.out.normalize();
  auto pruned = prune(pb.out, bad);
  if (!pruned) return std::nullopt;
  return restrict_reachable(*pruned);
}

std::optional<Smts> conjoin(const Smts& s, const Smts& t) {
  auto s_may = out_edges(s, s.may), s_must = out_edges(s, s.must);
  auto t_may = out_edges(t, t.may), t_must = out_edges(t, t.must);
  ProductBuilder pb(s, t);
  pb.out.initial = pb.intern(s.initial, t.initial);
  std::set<StateId> bad;
  for (StateId i = 0; i < pb.out.size(); ++i) {
    auto [a, b] = pb.pairs[i];
    for (const auto* k : s_must[a]) {
      bool any = false;
      for (const auto* l : t_may[b])
        if (auto m = conjoin_label(k->label, l->label)) {
          pb.out.add_must(i, *m, pb.intern(k->dst, l->dst));
          any = true;
        }
      if (!any) bad.insert(i);
    }
    for (const auto* l : t_must[b]) {
      bool any = false;
      for (const auto* k : s_may[a])
        if (auto m = conjoin_label(k->label, l->label)) {
          pb.out.add_must(i, *m, pb.intern(k->dst, l->dst));
          any = true;
        }
      if (!any) bad.insert(i);
    }
    for (const auto* k : s_may[a])
      for (const auto* l : t_may[b])
        if (auto m = conjoin_label(k->label, l->label)) pb.out.add_may(i, *m, pb.intern(k->dst, l->dst));
  }
  pb.out.normalize();
  auto pruned = prune(pb.out, bad);
  if (!pruned) return std::nullopt;
  return restrict_reachable(*pruned);
}

Smts widen(const Smts& s, const Rational& n) {
  Smts out = s;
  for (auto* v : {&out.may, &out.must})
    for (auto& tr : *v) tr.label = widen_label(tr.label, n);
  out.normalize();
  return out;
}

bool is_widening(const Smts& s, const Smts& t, const LeadFunction& bound) {
  const ExtRational limit = eval_zero(bound);
  const LeadFunction bottom = LeadFunction::bottom(bound.grid());
  auto admissible = [&](const TimedLabel& k, const TimedLabel& l) {
    return label_refines(k, l) && eval_zero(f_label(l, k, bottom)) <= limit;
  };
  const std::size_t n = s.size(), m = t.size();
  std::vector<char> rel(n * m, 1);
  auto s_may = out_edges(s, s.may), s_must = out_edges(s, s.must);
  auto t_may = out_edges(t, t.may), t_must = out_edges(t, t.must);
  // every edge on one side has an admissible partner on the other, landing
  // in the relation
  auto matched = [&](const std::vector<const Transition*>& xs, const std::vector<const Transition*>& ys,
                     bool left_is_s) {
    for (const auto* x : xs) {
      bool ok = std::any_of(ys.begin(), ys.end(), [&](const Transition* y) {
        const Transition* a = left_is_s ? x : y;
        const Transition* b = left_is_s ? y : x;
        return admissible(a->label, b->label) && rel[a->dst * m + b->dst];
      });
      if (!ok) return false;
    }
    return true;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId a = 0; a < n; ++a)
      for (StateId b = 0; b < m; ++b) {
        if (!rel[a * m + b]) continue;
        bool ok = matched(s_may[a], t_may[b], true) && matched(t_may[b], s_may[a], false) &&
                  matched(s_must[a], t_must[b], true) && matched(t_must[b], s_must[a], false);
        if (!ok) {
          rel[a * m + b] = 0;
          changed = true;
        }
      }
  }
  return rel[s.initial * m + t.initial];
}

bool is_deterministic(const Smts& s) {
  std::map<std::pair<StateId, std::string>, const Transition*> seen;
  for (const auto& tr : s.may) {
    auto [it, fresh] = seen.try_emplace({tr.src, tr.label.action}, &tr);
    if (!fresh && (it->second->label.window != tr.label.window || it->second->dst != tr.dst)) return false;
  }
  return true;
}

Smts unfold(const Smts& s, std::size_t depth, std::size_t budget) {
  auto may = out_edges(s, s.may), must = out_edges(s, s.must);
  Smts out;
  struct Node {
    StateId origin;
    std::size_t depth;
  };
  std::vector<Node> nodes{{s.initial, 0}};
  out.add_state(s.names[s.initial]);
  out.initial = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [x, d] = nodes[i];
    if (d == depth) continue;
    std::map<StateId, StateId> child;  // one child per successor state
    auto child_of = [&](StateId y) {
      auto [it, fresh] = child.try_emplace(y, out.size());
      if (fresh) {
        if (out.size() >= budget) throw BudgetError("unfolding exceeds node budget");
        out.add_state(s.names[y] + "#" + std::to_string(out.size()));
        nodes.push_back({y, d + 1});
      }
      return it->second;
    };
    for (const auto* tr : may[x]) out.add_may(i, tr->label, child_of(tr->dst));
    for (const auto* tr : must[x]) out.add_must(i, tr->label, child_of(tr->dst));
  }
  out.normalize();
  return out;
}

namespace {

struct ImplTree {
  std::vector<std::pair<TimedLabel, std::shared_ptr<const ImplTree>>> edges;
};
using ImplSet = std::vector<std::shared_ptr<const ImplTree>>;

class ImplEnumerator {
 public:
  ImplEnumerator(const Smts& s, const GridConfig& grid, std::size_t budget)
      : s_(s), grid_(grid), budget_(budget), may_(out_edges(s, s.may)), must_(out_edges(s, s.must)) {}

  const ImplSet& at(StateId x, std::size_t depth) {
    auto key = std::make_pair(x, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    ImplSet result;
    if (depth == 0) {
      result.push_back(leaf());
    } else {
      build(x, depth, result);
    }
    return memo_.emplace(key, std::move(result)).first->second;
  }

 private:
  using Choice = std::vector<std::pair<TimedLabel, std::shared_ptr<const ImplTree>>>;

  std::shared_ptr<const ImplTree> leaf() {
    static const auto l = std::make_shared<const ImplTree>();
    return l;
  }

  void charge(std::size_t n) {
    spent_ += n;
    if (spent_ > budget_) throw BudgetError("implementation enumeration exceeds budget");
  }

  // All ways of realising one may transition: any set of (grid point,
  // subtree) pairs. One point may lead to several subtrees.
  std::vector<Choice> choices_for(const Transition& tr, std::size_t depth) {
    const ImplSet& subs = at(tr.dst, depth - 1);
    auto points = implementations_of(tr.label, grid_);
    std::vector<Choice> out{Choice{}};
    for (const auto& p : points)
      for (const auto& sub : subs) {
        std::size_t base = out.size();
        charge(base);
        for (std::size_t i = 0; i < base; ++i) {
          Choice c = out[i];
          c.emplace_back(p, sub);
          out.push_back(std::move(c));
        }
      }
    return out;
  }

  void build(StateId x, std::size_t depth, ImplSet& result) {
    std::vector<std::vector<Choice>> per_edge;
    for (const auto* tr : may_[x]) per_edge.push_back(choices_for(*tr, depth));
    // remember which may edge each point came from, to check must coverage
    std::vector<std::size_t> pick(per_edge.size(), 0);
    for (;;) {
      bool covers = true;
      for (const auto* m : must_[x]) {
        bool hit = false;
        for (std::size_t e = 0; e < per_edge.size() && !hit; ++e) {
          if (may_[x][e]->dst != m->dst) continue;
          for (const auto& [label, sub] : per_edge[e][pick[e]])
            if (label_refines(label, m->label)) {
              hit = true;
              break;
            }
        }
        if (!hit) {
          covers = false;
          break;
        }
      }
      if (covers) {
        auto tree = std::make_shared<ImplTree>();
        for (std::size_t e = 0; e < per_edge.size(); ++e)
          for (const auto& edge : per_edge[e][pick[e]]) tree->edges.push_back(edge);
        result.push_back(std::move(tree));
        charge(1);
      }
      std::size_t e = 0;
      while (e < pick.size() && ++pick[e] == per_edge[e].size()) pick[e++] = 0;
      if (e == pick.size()) break;
    }
  }

  const Smts& s_;
  const GridConfig& grid_;
  std::size_t budget_;
  std::size_t spent_ = 0;
  std::vector<std::vector<const Transition*>> may_, must_;
  std::map<std::pair<StateId, std::size_t>, ImplSet> memo_;
};

Smts to_smts(const ImplTree& root) {
  Smts out;
  out.initial = out.add_state("i0");
  std::vector<std::pair<const ImplTree*, StateId>> stack{{&root, 0}};
  while (!stack.empty()) {
    auto [node, id] = stack.back();
    stack.pop_back();
    for (const auto& [label, sub] : node->edges) {
      StateId c = out.add_state("i" + std::to_string(out.size()));
      out.add_both(id, label, c);
      stack.emplace_back(sub.get(), c);
    }
  }
  out.normalize();
  return out;
}

}  // namespace

std::vector<Smts> enumerate_implementations(const Smts& s, std::size_t depth, const GridConfig& grid,
                                            std::size_t budget) {
  s.validate();
  ImplEnumerator en(s, grid, budget);
  std::vector<Smts> out;
  for (const auto& tree : en.at(s.initial, depth)) out.push_back(to_smts(*tree));
  return out;
}

ExtRational thorough_distance_oracle(const Smts& s, const Smts& t, std::size_t depth, const GridConfig& grid,
                                     std::size_t budget) {
  auto left = enumerate_implementations(s, depth, grid, budget);
  auto right = enumerate_implementations(t, depth, grid, budget);
  ExtRational worst(0);
  for (const auto& i : left) {
    ExtRational best = ExtRational::infinity();
    for (const auto& j : right) {
      best = min(best, h_mod(i, j, grid).value);
      if (best == ExtRational(0)) break;
    }
    worst = max(worst, best);
    if (worst.is_inf()) break;
  }
  return worst;
}

}  // namespace tmspec
