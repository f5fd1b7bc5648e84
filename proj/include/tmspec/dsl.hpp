#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmspec/mecs.hpp"
#include "tmspec/smts.hpp"

namespace tmspec {

/// Syntax error with a 1-based source position.
class ParseError : public ConfigError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// Named systems and settings read from a spec file.
///
///   option clock_cap 6;
///   mecs S {
///     alphabet get, grant;
///     initial idle;
///     must idle -> busy : get;
///     may busy -> idle : grant [get<=2 & get>=1];
///   }
///   smts T {
///     initial s;
///     must s -> s : delta@[1,2];
///     may s -> s : a;
///   }
///
/// Locations and states are declared by use. A must edge implies the may
/// edge with the same guard or label. Names that are not plain identifiers
/// are written in double quotes.
struct SpecFile {
  std::map<std::string, Mecs> mecs;
  std::map<std::string, Smts> smts;
  /// Definition order, for printing.
  std::vector<std::string> order;
  std::map<std::string, std::string> options;

  bool contains(const std::string& name) const { return mecs.contains(name) || smts.contains(name); }
};

SpecFile parse_spec(std::string_view text);
SpecFile load_spec(const std::string& path);

std::string print_mecs(const std::string& name, const Mecs& m);
std::string print_smts(const std::string& name, const Smts& s);
std::string print_spec(const SpecFile& f);

/// Graphviz rendering: may edges dashed, must edges solid, may edges implied
/// by an identical must edge left out.
std::string to_dot(const std::string& name, const Mecs& m);
std::string to_dot(const std::string& name, const Smts& s);

/// JSON with fields states, initial, may, must (and value, saturated,
/// iterations for distances).
std::string to_json(const Smts& s);
std::string to_json(const DistanceResult& d);

}  // namespace tmspec
