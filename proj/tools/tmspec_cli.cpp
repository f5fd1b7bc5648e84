// Command-line front end over spec files.
//
// Exit codes: 0 ok, 1 property violated, 2 construction does not exist,
// 3 parse or configuration error, 4 budget exceeded.

#include <fstream>
#include <iostream>
#include <variant>

#include "CLI11.hpp"
#include "tmspec/dsl.hpp"
#include "tmspec/mecs.hpp"
#include "tmspec/smts.hpp"

using namespace tmspec;

namespace {

enum Exit { kOk = 0, kViolated = 1, kMissing = 2, kConfig = 3, kBudget = 4 };

struct Settings {
  std::string step, lead_bound, value_cap, delays;
  long clock_cap = 0;
};

SemanticsOptions semantics_options(const SpecFile& f, const Settings& s) {
  SemanticsOptions o;
  auto pick = [&](const std::string& flag, const char* key) -> std::string {
    if (!flag.empty()) return flag;
    auto it = f.options.find(key);
    return it == f.options.end() ? "" : it->second;
  };
  if (auto v = pick(s.step, "step"); !v.empty()) o.step = parse_rational(v);
  if (s.clock_cap) {
    o.clock_cap = s.clock_cap;
  } else if (auto it = f.options.find("clock_cap"); it != f.options.end()) {
    o.clock_cap = std::stol(it->second);
  }
  auto mode = pick(s.delays, "delays");
  if (mode == "interval")
    o.delays = DelayMode::interval;
  else if (!mode.empty() && mode != "point")
    throw ConfigError("unknown delay mode '" + mode + "'");
  return o;
}

// Either system of a spec file, as its finite semantics when needed.
struct Loaded {
  const Mecs* mecs = nullptr;
  const Smts* smts = nullptr;
};

Loaded lookup(const SpecFile& f, const std::string& name) {
  if (auto it = f.mecs.find(name); it != f.mecs.end()) return {&it->second, nullptr};
  if (auto it = f.smts.find(name); it != f.smts.end()) return {nullptr, &it->second};
  throw ConfigError("no system named '" + name + "'");
}

Smts as_smts(const Loaded& x, const SemanticsOptions& o) { return x.smts ? *x.smts : semantics(*x.mecs, o); }

GridConfig distance_grid(const SpecFile& f, const Settings& s, const Smts& a, const Smts& b,
                         const SemanticsOptions& o) {
  GridConfig g = auto_grid(a, b, o.step);
  auto pick = [&](const std::string& flag, const char* key) -> std::string {
    if (!flag.empty()) return flag;
    auto it = f.options.find(key);
    return it == f.options.end() ? "" : it->second;
  };
  if (auto v = pick(s.lead_bound, "lead_bound"); !v.empty()) g.lead_bound = parse_rational(v);
  if (auto v = pick(s.value_cap, "value_cap"); !v.empty()) g.value_cap = parse_rational(v);
  g.validate();
  return g;
}

void append(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << "\n" << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modal specifications with interval-timed labels: distances, refinement and constructions"};
  app.require_subcommand(1);
  Settings settings;
  std::string file, a_name, b_name, out_name;
  long radius = 0;
  bool json = false, print_only = false;

  auto add_grid = [&](CLI::App* c) {
    c->add_option("--grid", settings.step, "grid step (rational)");
    c->add_option("--lead-bound", settings.lead_bound, "largest lead tracked");
    c->add_option("--cap", settings.value_cap, "largest finite distance value");
    c->add_option("--clock-cap", settings.clock_cap, "clock saturation bound for event-clock semantics");
    c->add_option("--delay-mode", settings.delays, "point or interval")->check(CLI::IsMember({"point", "interval"}));
  };

  auto* check = app.add_subcommand("check", "consistency and determinism report");
  check->add_option("file", file)->required();

  auto* distance = app.add_subcommand("distance", "modal refinement distance d(A,B)");
  distance->add_option("file", file)->required();
  distance->add_option("a", a_name)->required();
  distance->add_option("b", b_name)->required();
  distance->add_flag("--json", json, "print JSON");
  add_grid(distance);

  auto* refine = app.add_subcommand("refine", "modal refinement A <= B with witness or counterexample");
  refine->add_option("file", file)->required();
  refine->add_option("a", a_name)->required();
  refine->add_option("b", b_name)->required();
  add_grid(refine);

  std::map<std::string, CLI::App*> binary;
  for (const char* op : {"compose", "quotient", "conjoin"}) {
    auto* c = app.add_subcommand(op, std::string(op) + " A and B, appending the result to the file");
    c->add_option("file", file)->required();
    c->add_option("a", a_name)->required();
    c->add_option("b", b_name)->required();
    c->add_option("--out", out_name, "name of the result")->required();
    c->add_flag("--print", print_only, "print instead of appending");
    add_grid(c);
    binary[op] = c;
  }

  auto* widen_cmd = app.add_subcommand("widen", "widen every guard or delay window by N");
  widen_cmd->add_option("file", file)->required();
  widen_cmd->add_option("a", a_name)->required();
  widen_cmd->add_option("n", radius)->required()->check(CLI::NonNegativeNumber);
  widen_cmd->add_option("--out", out_name, "name of the result")->required();
  widen_cmd->add_flag("--print", print_only, "print instead of appending");

  auto* sem = app.add_subcommand("semantics", "dump the finite semantics of an event-clock specification");
  sem->add_option("file", file)->required();
  sem->add_option("a", a_name)->required();
  sem->add_flag("--json", json, "print JSON");
  add_grid(sem);

  auto* dot = app.add_subcommand("dot", "Graphviz rendering");
  dot->add_option("file", file)->required();
  dot->add_option("a", a_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    SpecFile spec = load_spec(file);
    SemanticsOptions sopt = semantics_options(spec, settings);

    if (*check) {
      bool ok = true;
      for (const auto& n : spec.order) {
        if (auto it = spec.mecs.find(n); it != spec.mecs.end()) {
          std::cout << n << ": mecs, " << it->second.size() << " locations, consistent, "
                    << (strongly_deterministic(it->second) ? "strongly deterministic" : "not strongly deterministic")
                    << "\n";
        } else {
          const Smts& s = spec.smts.at(n);
          auto bad = check_consistency(s);
          ok &= bad.empty();
          std::cout << n << ": smts, " << s.size() << " states, "
                    << (bad.empty() ? "consistent" : std::to_string(bad.size()) + " uncovered must transitions")
                    << ", " << (is_deterministic(s) ? "deterministic" : "not deterministic") << "\n";
        }
      }
      return ok ? kOk : kViolated;
    }

    if (*distance) {
      auto a = lookup(spec, a_name), b = lookup(spec, b_name);
      if (a.mecs && b.mecs) sopt = common_options(*a.mecs, *b.mecs, sopt);
      Smts sa = as_smts(a, sopt), sb = as_smts(b, sopt);
      GridConfig g = distance_grid(spec, settings, sa, sb, sopt);
      auto r = h_mod(sa, sb, g);
      if (json) {
        std::cout << to_json(r) << "\n";
      } else {
        std::cout << to_string(r.value) << "\n" << "saturated: " << (r.saturated ? "true" : "false") << "\n";
      }
      return kOk;
    }

    if (*refine) {
      auto a = lookup(spec, a_name), b = lookup(spec, b_name);
      if (a.mecs && b.mecs) sopt = common_options(*a.mecs, *b.mecs, sopt);
      Smts sa = as_smts(a, sopt), sb = as_smts(b, sopt);
      auto w = boolean_refines(sa, sb);
      if (w.holds) {
        std::cout << a_name << " refines " << b_name << "; relation of " << w.relation.size() << " pairs:\n";
        for (const auto& [x, y] : w.relation) std::cout << "  " << sa.names[x] << " <= " << sb.names[y] << "\n";
        return kOk;
      }
      std::cout << a_name << " does not refine " << b_name << "; counterexample:\n";
      for (const auto& st : w.counterexample) {
        const Smts& side = st.side == "left-may" ? sa : sb;
        std::cout << "  at (" << sa.names[st.left] << ", " << sb.names[st.right] << ") " << st.side << " "
                  << side.names[st.move.src] << " --" << to_string(st.move.label) << "--> "
                  << side.names[st.move.dst] << "\n";
      }
      return kViolated;
    }

    for (const auto& [op, cmd] : binary) {
      if (!*cmd) continue;
      if (spec.contains(out_name)) throw ConfigError("a system named '" + out_name + "' already exists");
      auto a = lookup(spec, a_name), b = lookup(spec, b_name);
      std::string text;
      if (a.mecs && b.mecs) {
        std::optional<Mecs> r;
        if (op == "compose")
          r = mecs_compose(*a.mecs, *b.mecs);
        else if (op == "quotient") {
          if (!strongly_deterministic(*b.mecs))
            std::cerr << "warning: divisor " << b_name << " is not strongly deterministic\n";
          r = mecs_quotient(*a.mecs, *b.mecs, settings.clock_cap);
        } else {
          r = mecs_conjoin(*a.mecs, *b.mecs, settings.clock_cap);
        }
        if (!r) {
          std::cout << op << " of " << a_name << " and " << b_name << " does not exist\n";
          return kMissing;
        }
        text = print_mecs(out_name, *r);
      } else {
        Smts sa = as_smts(a, sopt), sb = as_smts(b, sopt);
        std::optional<Smts> r;
        if (op == "compose")
          r = compose(sa, sb);
        else if (op == "quotient") {
          // Declared alphabets count, not just the actions that occur.
          std::set<std::string> sigma;
          for (const auto* m : {a.mecs, b.mecs})
            if (m) sigma.insert(m->alphabet.begin(), m->alphabet.end());
          r = quotient(sa, sb, sopt.step, sigma);
        } else {
          r = conjoin(sa, sb);
        }
        if (!r) {
          std::cout << op << " of " << a_name << " and " << b_name << " does not exist\n";
          return kMissing;
        }
        text = print_smts(out_name, *r);
      }
      if (print_only)
        std::cout << text;
      else
        append(file, text);
      return kOk;
    }

    if (*widen_cmd) {
      if (spec.contains(out_name)) throw ConfigError("a system named '" + out_name + "' already exists");
      auto a = lookup(spec, a_name);
      std::string text = a.mecs ? print_mecs(out_name, mecs_widen(*a.mecs, radius))
                                : print_smts(out_name, widen(*a.smts, Rational(radius)));
      if (print_only)
        std::cout << text;
      else
        append(file, text);
      return kOk;
    }

    if (*sem) {
      auto a = lookup(spec, a_name);
      Smts s = as_smts(a, sopt);
      std::cout << (json ? to_json(s) + "\n" : print_smts(a_name, s));
      return kOk;
    }

    if (*dot) {
      auto a = lookup(spec, a_name);
      std::cout << (a.mecs ? to_dot(a_name, *a.mecs) : to_dot(a_name, *a.smts));
      return kOk;
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kOk;
}
