#include "tmspec/rational.hpp"

#include <charconv>

namespace tmspec {

ExtRational::ExtRational(Rational v) : v_(v) {
  if (v < 0) throw ConfigError("extended values must be non-negative, got " + to_string(v));
}

const Rational& ExtRational::value() const {
  if (inf_) throw std::logic_error("value() on infinite ExtRational");
  return v_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
  if (a.v_ < b.v_) return std::strong_ordering::less;
  if (b.v_ < a.v_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if (a.inf_ || b.inf_) return ExtRational::infinity();
  return ExtRational(a.v_ + b.v_);
}

ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }
ExtRational min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(const ExtRational& r) { return r.is_inf() ? "inf" : to_string(r.value()); }

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("not a rational number: '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash), text), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto frac = text.substr(dot + 1);
    if (frac.size() > 12) throw ConfigError("too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    auto ipart = text.substr(0, dot);
    bool neg = !ipart.empty() && ipart.front() == '-';
    std::int64_t whole = ipart.empty() || ipart == "-" ? 0 : parse_int(ipart, text);
    std::int64_t f = frac.empty() ? 0 : parse_int(frac, text);
    Rational r(whole);
    r += Rational(neg ? -f : f, scale);
    return r;
  }
  return Rational(parse_int(text, text));
}

ExtRational parse_ext_rational(std::string_view text) {
  if (text == "inf" || text == "oo" || text == "∞") return ExtRational::infinity();
  return ExtRational(parse_rational(text));
}

}  // namespace tmspec
