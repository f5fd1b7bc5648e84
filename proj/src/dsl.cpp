#include "tmspec/dsl.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tmspec {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  enum Kind { word, quoted, punct, end } kind = end;
  std::string text;
  std::size_t line = 1, column = 1;
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '/' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw ParseError(line, col, "unterminated quoted name");
      t.kind = Token::quoted;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j - i + 1);
    } else if (src.substr(i, 2) == "->" || src.substr(i, 2) == "<=" || src.substr(i, 2) == ">=") {
      t.kind = Token::punct;
      t.text = std::string(src.substr(i, 2));
      advance(2);
    } else if (std::string_view("{};,:[]@&").find(c) != std::string_view::npos) {
      t.kind = Token::punct;
      t.text = std::string(1, c);
      advance(1);
    } else if (word_char(c)) {
      std::size_t j = i;
      while (j < src.size() && word_char(src[j])) ++j;
      t.kind = Token::word;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token e;
  e.line = line;
  e.column = col;
  out.push_back(e);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  SpecFile run() {
    SpecFile f;
    while (peek().kind != Token::end) {
      const Token& head = peek();
      std::string kw = word("'mecs', 'smts' or 'option'");
      if (kw == "option") {
        std::string key = word("option name");
        std::string value = word("option value");
        expect(";");
        f.options[key] = value;
        continue;
      }
      if (kw != "mecs" && kw != "smts") fail(head, "expected 'mecs', 'smts' or 'option', found '" + kw + "'");
      const Token& at = peek();
      std::string n = name("system name");
      if (f.contains(n)) fail(at, "duplicate system name '" + n + "'");
      if (kw == "mecs")
        f.mecs.emplace(n, parse_mecs(head));
      else
        f.smts.emplace(n, parse_smts(head));
      f.order.push_back(n);
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] static void fail(const Token& t, const std::string& what) { throw ParseError(t.line, t.column, what); }

  static std::string show(const Token& t) { return t.kind == Token::end ? "end of input" : "'" + t.text + "'"; }

  bool accept(const std::string& p) {
    if (peek().kind == Token::punct && peek().text == p) {
      next();
      return true;
    }
    return false;
  }
  bool accept_word(const std::string& w) {
    if (peek().kind == Token::word && peek().text == w) {
      next();
      return true;
    }
    return false;
  }
  void expect(const std::string& p) {
    if (!accept(p)) fail(peek(), "expected '" + p + "', found " + show(peek()));
  }
  std::string word(const std::string& what) {
    if (peek().kind != Token::word) fail(peek(), "expected " + what + ", found " + show(peek()));
    return next().text;
  }
  std::string name(const std::string& what) {
    if (peek().kind != Token::word && peek().kind != Token::quoted)
      fail(peek(), "expected " + what + ", found " + show(peek()));
    return next().text;
  }
  long natural(const std::string& what) {
    const Token& t = peek();
    std::string w = word(what);
    try {
      std::size_t used = 0;
      long v = std::stol(w, &used);
      if (used != w.size() || v < 0) throw std::invalid_argument(w);
      return v;
    } catch (const std::exception&) {
      fail(t, "expected a natural number for " + what + ", found '" + w + "'");
    }
  }

  Mecs parse_mecs(const Token& head) {
    Mecs m;
    expect("{");
    bool have_initial = false;
    auto loc = [&](const std::string& n) {
      if (auto i = m.find(n)) return *i;
      return m.add_location(n);
    };
    while (!accept("}")) {
      const Token& t = peek();
      std::string kw = word("'alphabet', 'initial', 'may' or 'must'");
      if (kw == "alphabet") {
        do m.alphabet.insert(name("action")); while (accept(","));
      } else if (kw == "initial") {
        m.initial = loc(name("location"));
        have_initial = true;
      } else if (kw == "may" || kw == "must") {
        std::size_t src = loc(name("location"));
        expect("->");
        std::size_t dst = loc(name("location"));
        expect(":");
        const Token& at = peek();
        std::string action = name("action");
        if (!m.alphabet.contains(action)) fail(at, "action '" + action + "' not declared in the alphabet");
        ClockConstraint g;
        if (accept("[")) g = guard(m.alphabet);
        if (kw == "must")
          m.add_must(src, action, g, dst);
        else
          m.add_may(src, action, g, dst);
      } else {
        fail(t, "unexpected '" + kw + "' in mecs body");
      }
      expect(";");
    }
    if (!have_initial) fail(head, "missing 'initial' declaration");
    m.normalize();
    try {
      m.validate();
    } catch (const ConfigError& e) {
      fail(head, e.what());
    }
    return m;
  }

  ClockConstraint guard(const std::set<std::string>& alphabet) {
    ClockConstraint g;
    if (accept_word("true")) {
      expect("]");
      return g;
    }
    do {
      const Token& at = peek();
      std::string clock = name("clock");
      if (!alphabet.contains(clock)) fail(at, "unknown clock '" + clock + "'");
      bool upper = accept("<=");
      if (!upper) expect(">=");
      long k = natural("clock bound");
      try {
        upper ? g.at_most(clock, k) : g.at_least(clock, k);
      } catch (const ConfigError& e) {
        fail(at, e.what());
      }
    } while (accept("&"));
    expect("]");
    return g;
  }

  Rational bound(bool allow_inf, bool& inf) {
    const Token& t = peek();
    std::string w = word("interval bound");
    inf = false;
    if (w == "inf" || w == "oo") {
      if (!allow_inf) fail(t, "lower bound cannot be infinite");
      inf = true;
      return Rational(0);
    }
    try {
      return parse_rational(w);
    } catch (const std::exception&) {
      fail(t, "malformed number '" + w + "'");
    }
  }

  Smts parse_smts(const Token& head) {
    Smts s;
    expect("{");
    bool have_initial = false;
    auto state = [&](const std::string& n) {
      if (auto i = s.find(n)) return *i;
      return s.add_state(n);
    };
    while (!accept("}")) {
      const Token& t = peek();
      std::string kw = word("'initial', 'may' or 'must'");
      if (kw == "initial") {
        s.initial = state(name("state"));
        have_initial = true;
      } else if (kw == "may" || kw == "must") {
        StateId src = state(name("state"));
        expect("->");
        StateId dst = state(name("state"));
        expect(":");
        const Token& at = peek();
        std::string action = name("action");
        TimedLabel label = TimedLabel::act(action);
        if (accept("@")) {
          expect("[");
          bool inf = false;
          Rational lo = bound(false, inf);
          expect(",");
          Rational hi = bound(true, inf);
          expect("]");
          try {
            label.window = Interval(lo, inf ? std::nullopt : std::optional<Rational>(hi));
            label.validate();
          } catch (const ConfigError& e) {
            fail(at, e.what());
          }
        } else if (action == kDelay) {
          fail(at, "'" + kDelay + "' needs an interval, as in " + kDelay + "@[l,r]");
        }
        if (kw == "must")
          s.add_both(src, label, dst);
        else
          s.add_may(src, label, dst);
      } else {
        fail(t, "unexpected '" + kw + "' in smts body");
      }
      expect(";");
    }
    if (!have_initial) fail(head, "missing 'initial' declaration");
    s.normalize();
    return s;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool plain(const std::string& n) {
  if (n.empty()) return false;
  for (char c : n)
    if (!word_char(c)) return false;
  return true;
}

std::string quote(const std::string& n) { return plain(n) ? n : "\"" + n + "\""; }

std::string label_text(const TimedLabel& k) {
  if (!k.is_delay() && k.window == Interval::point(Rational(0))) return quote(k.action);
  return quote(k.action) + "@" + to_string(k.window);
}

std::string guard_text(const ClockConstraint& g) {
  if (g.is_true()) return "";
  std::string out = " [";
  bool first = true;
  for (const auto& [c, w] : g.bounds) {
    auto atom = [&](const std::string& a) {
      out += (first ? "" : " & ") + a;
      first = false;
    };
    if (w.lo > 0) atom(quote(c) + ">=" + to_string(w.lo));
    if (w.hi) atom(quote(c) + "<=" + to_string(*w.hi));
  }
  return out + "]";
}

template <typename E>
bool has_must_twin(const std::vector<E>& must, const E& e) {
  return std::find(must.begin(), must.end(), e) != must.end();
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

SpecFile parse_spec(std::string_view text) { return Parser(text).run(); }

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string print_mecs(const std::string& name, const Mecs& m) {
  std::ostringstream out;
  out << "mecs " << quote(name) << " {\n  alphabet ";
  bool first = true;
  for (const auto& a : m.alphabet) {
    out << (first ? "" : ", ") << quote(a);
    first = false;
  }
  out << ";\n  initial " << quote(m.locations[m.initial]) << ";\n";
  for (const auto& e : m.must)
    out << "  must " << quote(m.locations[e.src]) << " -> " << quote(m.locations[e.dst]) << " : " << quote(e.action)
        << guard_text(e.guard) << ";\n";
  for (const auto& e : m.may)
    if (!has_must_twin(m.must, e))
      out << "  may " << quote(m.locations[e.src]) << " -> " << quote(m.locations[e.dst]) << " : "
          << quote(e.action) << guard_text(e.guard) << ";\n";
  out << "}\n";
  return out.str();
}

std::string print_smts(const std::string& name, const Smts& s) {
  std::ostringstream out;
  out << "smts " << quote(name) << " {\n  initial " << quote(s.names[s.initial]) << ";\n";
  for (const auto& tr : s.must)
    out << "  must " << quote(s.names[tr.src]) << " -> " << quote(s.names[tr.dst]) << " : " << label_text(tr.label)
        << ";\n";
  for (const auto& tr : s.may)
    if (!has_must_twin(s.must, tr))
      out << "  may " << quote(s.names[tr.src]) << " -> " << quote(s.names[tr.dst]) << " : "
          << label_text(tr.label) << ";\n";
  out << "}\n";
  return out.str();
}

std::string print_spec(const SpecFile& f) {
  std::string out;
  for (const auto& [k, v] : f.options) out += "option " + k + " " + v + ";\n";
  for (const auto& n : f.order) {
    if (!out.empty()) out += "\n";
    if (auto it = f.mecs.find(n); it != f.mecs.end())
      out += print_mecs(n, it->second);
    else
      out += print_smts(n, f.smts.at(n));
  }
  return out;
}

std::string to_dot(const std::string& name, const Mecs& m) {
  std::ostringstream out;
  out << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t i = 0; i < m.size(); ++i)
    out << "  n" << i << " [label=\"" << dot_escape(m.locations[i]) << "\"];\n";
  out << "  init -> n" << m.initial << ";\n";
  auto edge = [&](const MecsEdge& e, bool dashed) {
    std::string label = e.action;
    if (!e.guard.is_true()) label += "\\n" + to_string(e.guard);
    out << "  n" << e.src << " -> n" << e.dst << " [label=\"" << dot_escape(label) << "\""
        << (dashed ? ", style=dashed" : "") << "];\n";
  };
  for (const auto& e : m.must) edge(e, false);
  for (const auto& e : m.may)
    if (!has_must_twin(m.must, e)) edge(e, true);
  out << "}\n";
  return out.str();
}

std::string to_dot(const std::string& name, const Smts& s) {
  std::ostringstream out;
  out << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t i = 0; i < s.size(); ++i) out << "  n" << i << " [label=\"" << dot_escape(s.names[i]) << "\"];\n";
  out << "  init -> n" << s.initial << ";\n";
  auto edge = [&](const Transition& tr, bool dashed) {
    out << "  n" << tr.src << " -> n" << tr.dst << " [label=\"" << dot_escape(to_string(tr.label)) << "\""
        << (dashed ? ", style=dashed" : "") << "];\n";
  };
  for (const auto& tr : s.must) edge(tr, false);
  for (const auto& tr : s.may)
    if (!has_must_twin(s.must, tr)) edge(tr, true);
  out << "}\n";
  return out.str();
}

std::string to_json(const Smts& s) {
  using nlohmann::json;
  auto edges = [&](const std::vector<Transition>& v) {
    json a = json::array();
    for (const auto& tr : v)
      a.push_back({{"from", s.names[tr.src]},
                   {"action", tr.label.action},
                   {"lo", to_string(tr.label.window.lo)},
                   {"hi", tr.label.window.hi ? to_string(*tr.label.window.hi) : "inf"},
                   {"to", s.names[tr.dst]}});
    return a;
  };
  json j{{"states", s.names}, {"initial", s.names[s.initial]}, {"may", edges(s.may)}, {"must", edges(s.must)}};
  return j.dump(2);
}

std::string to_json(const DistanceResult& d) {
  nlohmann::json j{{"value", to_string(d.value)}, {"saturated", d.saturated}, {"iterations", d.iterations}};
  return j.dump(2);
}

}  // namespace tmspec
