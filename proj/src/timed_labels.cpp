#include "tmspec/timed_labels.hpp"

#include <algorithm>
#include <map>

namespace tmspec {

namespace {

// a <= b where nullopt is +infinity
bool le(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!b) return true;
  if (!a) return false;
  return *a <= *b;
}

bool lt(const std::optional<Rational>& a, const std::optional<Rational>& b) { return !le(b, a); }

std::strong_ordering cmp(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

Interval::Interval(Rational l, std::optional<Rational> h) : lo(l), hi(h) {
  if (lo < 0) throw ConfigError("interval lower end must be non-negative");
  if (hi && *hi < lo) throw ConfigError("empty interval [" + to_string(lo) + "," + to_string(*hi) + "]");
}

bool Interval::subset_of(const Interval& o) const { return lo >= o.lo && le(hi, o.hi); }

std::optional<Interval> Interval::intersect(const Interval& o) const {
  Rational l = std::max(lo, o.lo);
  std::optional<Rational> h = le(hi, o.hi) ? hi : o.hi;
  if (h && *h < l) return std::nullopt;
  return Interval(l, h);
}

std::strong_ordering operator<=>(const Interval& a, const Interval& b) {
  if (auto c = cmp(a.lo, b.lo); c != 0) return c;
  if (a.hi == b.hi) return std::strong_ordering::equal;
  return lt(a.hi, b.hi) ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string to_string(const Interval& i) {
  return "[" + to_string(i.lo) + "," + (i.hi ? to_string(*i.hi) : std::string("inf")) + "]";
}

void TimedLabel::validate() const {
  if (action.empty()) throw ConfigError("empty action name");
  if (!is_delay() && !(window == Interval::point(Rational(0))))
    throw ConfigError("discrete action '" + action + "' must carry the window [0,0]");
}

std::strong_ordering operator<=>(const TimedLabel& a, const TimedLabel& b) {
  if (auto c = a.action <=> b.action; c != 0) return c;
  return a.window <=> b.window;
}

std::string to_string(const TimedLabel& l) {
  if (!l.is_delay() && l.window == Interval::point(Rational(0))) return l.action;
  return l.action + "@" + to_string(l.window);
}

bool label_refines(const TimedLabel& k, const TimedLabel& l) {
  return k.action == l.action && k.window.subset_of(l.window);
}

std::vector<TimedLabel> implementations_of(const TimedLabel& k, const GridConfig& grid) {
  grid.validate();
  Ticks lo = grid.to_ticks(k.window.lo);
  Ticks hi = k.window.hi ? grid.to_ticks(*k.window.hi) : std::max(lo, grid.cap_ticks());
  std::vector<TimedLabel> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (Ticks t = lo; t <= hi; ++t) out.push_back(TimedLabel{k.action, Interval::point(grid.from_ticks(t))});
  return out;
}

namespace kernel {

TickWindow to_ticks(const Interval& i, const GridConfig& grid) {
  TickWindow w;
  w.lo = grid.to_ticks(i.lo);
  if (i.hi) {
    w.hi = grid.to_ticks(*i.hi);
  } else {
    w.inf = true;
    w.hi = w.lo;
  }
  return w;
}

void lead_costs(std::span<const Ticks> alpha, Ticks lead_bound, Ticks cap, std::span<Ticks> beta,
                bool* clipped) {
  for (Ticks e = -lead_bound; e <= lead_bound; ++e) {
    auto i = static_cast<std::size_t>(e + lead_bound);
    Ticks mag = saturate(e < 0 ? -e : e, cap);
    if (clipped && mag == kInfTicks && alpha[i] != kInfTicks) *clipped = true;
    beta[i] = std::max(mag, alpha[i]);
  }
}

void hausdorff(const TickWindow& k, const TickWindow& l, std::span<const Ticks> beta, Ticks lead_bound,
               std::span<Ticks> out, bool* clipped) {
  bool off = false;
  const Ticks dmax = lead_bound;
  if (!k.inf && !l.inf && k.lo == k.hi && l.lo == l.hi) {
    Ticks shift = k.lo - l.lo;
    for (Ticks d = -dmax; d <= dmax; ++d) {
      Ticks e = d + shift;
      bool outside = e < -dmax || e > dmax;
      off |= outside;
      out[static_cast<std::size_t>(d + dmax)] = outside ? kInfTicks : beta[static_cast<std::size_t>(e + dmax)];
    }
    if (clipped && off) *clipped = true;
    return;
  }
  // Beyond t_max the inner infimum is either constant in t (unbounded l) or
  // entirely off the grid (bounded l), so the sweep below is exact.
  Ticks t_max = k.hi;
  if (k.inf) t_max = std::max(k.lo, (l.inf ? l.lo : l.hi) + 2 * dmax) + 1;
  for (Ticks d = -dmax; d <= dmax; ++d) {
    Ticks best = 0;
    for (Ticks t = k.lo; t <= t_max && best != kInfTicks; ++t) {
      Ticks raw_hi = d + t - l.lo;
      Ticks raw_lo = l.inf ? -dmax - 1 : d + t - l.hi;
      off |= raw_hi > dmax || raw_lo < -dmax;
      Ticks e_hi = std::min(raw_hi, dmax);
      Ticks e_lo = std::max(raw_lo, -dmax);
      Ticks v = kInfTicks;
      for (Ticks e = e_lo; e <= e_hi; ++e) v = std::min(v, beta[static_cast<std::size_t>(e + dmax)]);
      best = std::max(best, v);
    }
    out[static_cast<std::size_t>(d + dmax)] = best;
  }
  if (clipped && off) *clipped = true;
}

}  // namespace kernel

namespace {

LeadFunction apply_f(const TimedLabel& k, const TimedLabel& l, const LeadFunction& alpha) {
  const GridConfig& g = alpha.grid();
  if (k.action != l.action) return LeadFunction::top(g);
  std::vector<Ticks> beta(alpha.size()), out(alpha.size());
  kernel::lead_costs(alpha.ticks(), g.lead_ticks(), g.cap_ticks(), beta);
  kernel::hausdorff(kernel::to_ticks(k.window, g), kernel::to_ticks(l.window, g), beta, g.lead_ticks(), out);
  return LeadFunction(g, std::move(out));
}

}  // namespace

LeadFunction f_point(const TimedLabel& m, const TimedLabel& n, const LeadFunction& alpha) {
  if (!m.is_implementation() || !n.is_implementation())
    throw ConfigError("f_point expects implementation labels");
  return apply_f(m, n, alpha);
}

LeadFunction f_label(const TimedLabel& k, const TimedLabel& l, const LeadFunction& alpha) {
  return apply_f(k, l, alpha);
}

std::optional<TimedLabel> compose_label(const TimedLabel& k, const TimedLabel& l) {
  if (k.action != l.action) return std::nullopt;
  auto w = k.window.intersect(l.window);
  if (!w) return std::nullopt;
  return TimedLabel{k.action, *w};
}

std::optional<TimedLabel> quotient_label(const TimedLabel& ell, const TimedLabel& k) {
  if (ell.action != k.action) return std::nullopt;
  const Rational& l = k.window.lo;
  const auto& r = k.window.hi;
  const Rational& lp = ell.window.lo;
  const auto& rp = ell.window.hi;
  std::optional<Interval> w;
  if (l < lp) {
    if (lt(r, lp)) return std::nullopt;                   // l <= r < l' <= r'
    w = le(r, rp) ? Interval::from(lp)                     // l < l' <= r <= r'
                  : Interval(lp, rp);                      // l < l' <= r' < r
  } else {
    if (lt(rp, l)) return std::nullopt;                   // l' <= r' < l <= r
    w = le(r, rp) ? Interval::all()                        // l' <= l <= r <= r'
                  : Interval(Rational(0), rp);             // l' <= l <= r' < r
  }
  if (!k.is_delay()) {
    if (!w->contains(Rational(0))) return std::nullopt;
    w = Interval::point(Rational(0));
  }
  return TimedLabel{k.action, *w};
}

LeadFunction p_bound(const LeadFunction& a, const LeadFunction& b) { return lattice_max(a, b); }

LeadFunction c_relaxed(const LeadFunction& beta, const LeadFunction& gamma, const LeadFunction& a,
                       const LeadFunction& b) {
  return lattice_add(lattice_max(a, b), lattice_max(beta, gamma));
}

TimedLabel widen_label(const TimedLabel& k, const Rational& n) {
  if (n < 0) throw ConfigError("widening radius must be non-negative");
  if (!k.is_delay()) return k;
  Rational lo = k.window.lo > n ? k.window.lo - n : Rational(0);
  std::optional<Rational> hi;
  if (k.window.hi) hi = *k.window.hi + n;
  return TimedLabel{k.action, Interval(lo, hi)};
}

std::vector<TimedLabel> complement_labels(const std::vector<TimedLabel>& enabled,
                                          const std::set<std::string>& alphabet, const Rational& step) {
  if (step <= 0) throw ConfigError("grid step must be positive");
  std::map<std::string, std::vector<Interval>> by_action;
  for (const auto& a : alphabet) by_action[a];
  by_action[kDelay];
  for (const auto& k : enabled)
    if (auto it = by_action.find(k.action); it != by_action.end()) it->second.push_back(k.window);

  std::vector<TimedLabel> out;
  for (auto& [action, windows] : by_action) {
    if (action != kDelay) {
      if (windows.empty()) out.push_back(TimedLabel::act(action));
      continue;
    }
    std::sort(windows.begin(), windows.end());
    Rational next_free(0);  // smallest grid point not yet covered
    bool open_end = true;
    for (const auto& w : windows) {
      if (w.lo > next_free && w.lo - step >= next_free)
        out.push_back(TimedLabel::delay(next_free, w.lo - step));
      if (!w.hi) {
        open_end = false;
        break;
      }
      next_free = std::max(next_free, *w.hi + step);
    }
    if (open_end) out.push_back(TimedLabel::delay(next_free, std::nullopt));
  }
  return out;
}

}  // namespace tmspec
