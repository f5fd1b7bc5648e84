#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace tmspec {

using Rational = boost::rational<std::int64_t>;

/// Raised for invalid grids, off-grid values and mismatched configurations.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration or state-space expansion exceeds its budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-negative rational extended with +infinity.
class ExtRational {
 public:
  constexpr ExtRational() = default;
  ExtRational(Rational v);  // NOLINT(google-explicit-constructor)
  ExtRational(std::int64_t v) : ExtRational(Rational(v)) {}  // NOLINT

  static ExtRational infinity() {
    ExtRational r;
    r.inf_ = true;
    return r;
  }

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }
  /// Finite value; throws std::logic_error on infinity.
  const Rational& value() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);

 private:
  bool inf_ = false;
  Rational v_{0};
};

ExtRational max(const ExtRational& a, const ExtRational& b);
ExtRational min(const ExtRational& a, const ExtRational& b);

/// `p/q`, plain integers without denominator, `inf` for infinity.
std::string to_string(const Rational& r);
std::string to_string(const ExtRational& r);

/// Accepts `7`, `-3`, `1/2`, `2.5`; `inf` only via parse_ext_rational.
Rational parse_rational(std::string_view text);
ExtRational parse_ext_rational(std::string_view text);

}  // namespace tmspec
