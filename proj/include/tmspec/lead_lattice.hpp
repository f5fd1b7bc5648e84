#pragma once

// Finite lead functions: maps from leads on the grid {-D, -D+e, ..., D} to
// extended non-negative values. Leads outside [-D, D] read as infinity, and
// values above the cap are stored as infinity.
//
// Values are stored as integer multiples of the grid step ("ticks"); every
// value the distance machinery produces is a sum or maximum of grid leads,
// so this representation is exact.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tmspec/rational.hpp"

namespace tmspec {

using Ticks = std::int64_t;
inline constexpr Ticks kInfTicks = std::numeric_limits<Ticks>::max();

struct GridConfig {
  Rational step{1};
  Rational lead_bound{12};
  Rational value_cap{12};

  /// Throws ConfigError unless step > 0 and both bounds are positive
  /// multiples of step.
  void validate() const;

  Ticks lead_ticks() const;
  Ticks cap_ticks() const;
  /// Converts a grid-aligned rational to ticks; throws ConfigError otherwise.
  Ticks to_ticks(const Rational& r) const;
  bool on_grid(const Rational& r) const;
  Rational from_ticks(Ticks t) const { return step * t; }
  ExtRational value_from_ticks(Ticks t) const;

  /// Default finitization for inputs whose largest time constant is
  /// `max_constant`: lead bound and value cap both 2 * (max_constant + 1).
  static GridConfig for_constant(const Rational& max_constant, const Rational& step = Rational(1));

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

class LeadFunction {
 public:
  explicit LeadFunction(const GridConfig& grid, Ticks fill = 0);
  LeadFunction(const GridConfig& grid, std::vector<Ticks> table);

  static LeadFunction bottom(const GridConfig& grid) { return LeadFunction(grid, 0); }
  static LeadFunction top(const GridConfig& grid) { return LeadFunction(grid, kInfTicks); }
  static LeadFunction constant(const GridConfig& grid, const ExtRational& v);

  const GridConfig& grid() const { return grid_; }
  std::span<const Ticks> ticks() const { return table_; }
  std::size_t size() const { return table_.size(); }

  /// Value at a lead; leads outside the grid range read as infinity.
  ExtRational at(const Rational& lead) const;
  /// Sets the value at a grid lead (saturating above the cap).
  void set(const Rational& lead, const ExtRational& value);

  /// Tick-level access: index 0 is lead -D.
  Ticks at_index(std::size_t i) const { return table_[i]; }
  Ticks at_lead_ticks(Ticks lead) const;

  bool is_top() const;
  bool is_bottom() const;

  friend bool operator==(const LeadFunction& a, const LeadFunction& b) {
    return a.grid_ == b.grid_ && a.table_ == b.table_;
  }

 private:
  GridConfig grid_;
  std::vector<Ticks> table_;
};

bool lattice_leq(const LeadFunction& a, const LeadFunction& b);
LeadFunction lattice_add(const LeadFunction& a, const LeadFunction& b);
LeadFunction lattice_max(const LeadFunction& a, const LeadFunction& b);
LeadFunction lattice_min(const LeadFunction& a, const LeadFunction& b);
/// Value at lead zero.
ExtRational eval_zero(const LeadFunction& a);
/// sup over grid leads of |a(d) - b(d)|, with inf - inf read as 0.
ExtRational sup_distance(const LeadFunction& a, const LeadFunction& b);

/// Saturating tick helpers shared by the distance kernels.
inline Ticks saturate(Ticks v, Ticks cap) { return v > cap ? kInfTicks : v; }
inline Ticks add_ticks(Ticks a, Ticks b, Ticks cap) {
  if (a == kInfTicks || b == kInfTicks) return kInfTicks;
  return saturate(a + b, cap);
}

}  // namespace tmspec
