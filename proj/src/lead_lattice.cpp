#include "tmspec/lead_lattice.hpp"

#include <algorithm>

namespace tmspec {

namespace {

void require_same_grid(const LeadFunction& a, const LeadFunction& b) {
  if (!(a.grid() == b.grid())) throw ConfigError("lead functions over different grids");
}

}  // namespace

void GridConfig::validate() const {
  if (step <= 0) throw ConfigError("grid step must be positive");
  if (lead_bound <= 0 || !on_grid(lead_bound))
    throw ConfigError("lead bound must be a positive multiple of the step");
  if (value_cap <= 0 || !on_grid(value_cap))
    throw ConfigError("value cap must be a positive multiple of the step");
}

bool GridConfig::on_grid(const Rational& r) const { return (r / step).denominator() == 1; }

Ticks GridConfig::to_ticks(const Rational& r) const {
  Rational q = r / step;
  if (q.denominator() != 1) throw ConfigError(to_string(r) + " is not on the grid of step " + to_string(step));
  return q.numerator();
}

Ticks GridConfig::lead_ticks() const { return to_ticks(lead_bound); }
Ticks GridConfig::cap_ticks() const { return to_ticks(value_cap); }

ExtRational GridConfig::value_from_ticks(Ticks t) const {
  if (t == kInfTicks) return ExtRational::infinity();
  return ExtRational(from_ticks(t));
}

GridConfig GridConfig::for_constant(const Rational& max_constant, const Rational& step) {
  if (step <= 0) throw ConfigError("grid step must be positive");
  // round the constant up to the grid before scaling
  Rational c = max_constant < 0 ? Rational(0) : max_constant;
  Rational q = c / step;
  std::int64_t up = q.numerator() / q.denominator() + (q.denominator() == 1 ? 0 : 1);
  Rational bound = (step * up + 1) * 2;
  Rational qb = bound / step;
  std::int64_t ub = qb.numerator() / qb.denominator() + (qb.denominator() == 1 ? 0 : 1);
  GridConfig g{step, step * ub, step * ub};
  g.validate();
  return g;
}

LeadFunction::LeadFunction(const GridConfig& grid, Ticks fill) : grid_(grid) {
  grid_.validate();
  table_.assign(static_cast<std::size_t>(2 * grid_.lead_ticks() + 1), saturate(fill, grid_.cap_ticks()));
}

LeadFunction::LeadFunction(const GridConfig& grid, std::vector<Ticks> table)
    : grid_(grid), table_(std::move(table)) {
  grid_.validate();
  if (table_.size() != static_cast<std::size_t>(2 * grid_.lead_ticks() + 1))
    throw ConfigError("lead table size does not match grid");
  for (auto& v : table_) {
    if (v < 0) throw ConfigError("lead function values must be non-negative");
    v = saturate(v, grid_.cap_ticks());
  }
}

LeadFunction LeadFunction::constant(const GridConfig& grid, const ExtRational& v) {
  return LeadFunction(grid, v.is_inf() ? kInfTicks : grid.to_ticks(v.value()));
}

Ticks LeadFunction::at_lead_ticks(Ticks lead) const {
  Ticks d = grid_.lead_ticks();
  if (lead < -d || lead > d) return kInfTicks;
  return table_[static_cast<std::size_t>(lead + d)];
}

ExtRational LeadFunction::at(const Rational& lead) const {
  if (!grid_.on_grid(lead)) throw ConfigError("lead " + to_string(lead) + " is off the grid");
  return grid_.value_from_ticks(at_lead_ticks(grid_.to_ticks(lead)));
}

void LeadFunction::set(const Rational& lead, const ExtRational& value) {
  Ticks l = grid_.to_ticks(lead);
  Ticks d = grid_.lead_ticks();
  if (l < -d || l > d) throw ConfigError("lead " + to_string(lead) + " outside the lead bound");
  Ticks v = value.is_inf() ? kInfTicks : grid_.to_ticks(value.value());
  table_[static_cast<std::size_t>(l + d)] = saturate(v, grid_.cap_ticks());
}

bool LeadFunction::is_top() const {
  return std::all_of(table_.begin(), table_.end(), [](Ticks v) { return v == kInfTicks; });
}

bool LeadFunction::is_bottom() const {
  return std::all_of(table_.begin(), table_.end(), [](Ticks v) { return v == 0; });
}

bool lattice_leq(const LeadFunction& a, const LeadFunction& b) {
  require_same_grid(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.at_index(i) > b.at_index(i)) return false;
  return true;
}

LeadFunction lattice_add(const LeadFunction& a, const LeadFunction& b) {
  require_same_grid(a, b);
  std::vector<Ticks> out(a.size());
  Ticks cap = a.grid().cap_ticks();
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = add_ticks(a.at_index(i), b.at_index(i), cap);
  return LeadFunction(a.grid(), std::move(out));
}

LeadFunction lattice_max(const LeadFunction& a, const LeadFunction& b) {
  require_same_grid(a, b);
  std::vector<Ticks> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a.at_index(i), b.at_index(i));
  return LeadFunction(a.grid(), std::move(out));
}

LeadFunction lattice_min(const LeadFunction& a, const LeadFunction& b) {
  require_same_grid(a, b);
  std::vector<Ticks> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a.at_index(i), b.at_index(i));
  return LeadFunction(a.grid(), std::move(out));
}

ExtRational eval_zero(const LeadFunction& a) { return a.grid().value_from_ticks(a.at_lead_ticks(0)); }

ExtRational sup_distance(const LeadFunction& a, const LeadFunction& b) {
  require_same_grid(a, b);
  Ticks best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Ticks x = a.at_index(i), y = b.at_index(i);
    if (x == kInfTicks && y == kInfTicks) continue;
    if (x == kInfTicks || y == kInfTicks) return ExtRational::infinity();
    best = std::max(best, x > y ? x - y : y - x);
  }
  return a.grid().value_from_ticks(best);
}

}  // namespace tmspec
