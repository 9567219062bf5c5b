#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace homlab::script {

struct SourcePos {
  int line = 1;
  int column = 1;
};

class ScriptError : public std::runtime_error {
 public:
  ScriptError(SourcePos pos, const std::string& msg)
      : std::runtime_error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + msg),
        pos_(pos),
        message_(msg) {}
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

// ---------------------------------------------------------------------------------------
// Syntax tree. Positions are carried for error messages and ignored by ==.

struct PolyText {
  std::string text;  // whitespace removed
  SourcePos pos;
  bool operator==(const PolyText& o) const { return text == o.text; }
};

struct RingVar {
  std::string name;
  int weight = 1;
  bool operator==(const RingVar&) const = default;
};

struct RingLiteral {
  std::uint32_t p = 2;
  std::vector<RingVar> vars;
  std::vector<PolyText> ideal;
  bool operator==(const RingLiteral&) const = default;
};

struct RingDecl {
  std::string name;
  std::variant<RingLiteral, std::string> value;  // literal or a builtin ring name
  SourcePos pos;
  bool operator==(const RingDecl& o) const { return name == o.name && value == o.value; }
};

struct Arg {
  enum class Kind { Ident, Int, Matrix, IntList, PolyList };
  Kind kind = Kind::Ident;
  std::string ident;
  std::int64_t value = 0;
  std::vector<std::vector<PolyText>> matrix;  // rows
  std::vector<std::int64_t> ints;
  std::vector<PolyText> polys;
  SourcePos pos;

  bool operator==(const Arg& o) const {
    return kind == o.kind && ident == o.ident && value == o.value && matrix == o.matrix && ints == o.ints &&
           polys == o.polys;
  }
};

struct Option {
  std::string name;
  std::optional<std::string> value;
  SourcePos pos;
  bool operator==(const Option& o) const { return name == o.name && value == o.value; }
};

struct ModuleDecl {
  std::string name;
  std::string constructor;
  std::vector<Arg> args;
  SourcePos pos;
  bool operator==(const ModuleDecl& o) const { return name == o.name && constructor == o.constructor && args == o.args; }
};

/// compute WHAT args; check ID args; verify ID options; search ID options; oracle-check options.
struct Command {
  std::string verb;
  std::string target;
  std::vector<Arg> args;
  std::vector<Option> options;
  SourcePos pos;
  bool operator==(const Command& o) const {
    return verb == o.verb && target == o.target && args == o.args && options == o.options;
  }

  const Option* option(std::string_view name) const {
    for (auto& o : options)
      if (o.name == name) return &o;
    return nullptr;
  }
};

using Statement = std::variant<RingDecl, ModuleDecl, Command>;

struct Script {
  std::vector<Statement> statements;
  bool operator==(const Script&) const = default;
};

// ---------------------------------------------------------------------------------------
// Parser.

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Script parse() {
    Script out;
    while (true) {
      skip_space();
      if (at_end()) break;
      out.statements.push_back(statement());
    }
    return out;
  }

  /// A ring expression on its own, as accepted after `ring NAME =`.
  std::variant<RingLiteral, std::string> parse_ring_only() {
    auto r = ring_expr();
    skip_space();
    if (!at_end()) fail("unexpected text after ring");
    return r;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;

  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_]; }
  char peek2() const { return i_ + 1 < s_.size() ? s_[i_ + 1] : '\0'; }
  SourcePos here() const { return {line_, col_}; }

  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ScriptError(here(), msg); }

  void skip_space() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'" + found());
    advance();
  }

  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    advance();
    return true;
  }

  std::string found() const {
    if (at_end()) return " but reached the end of input";
    return std::string(" but found '") + peek() + "'";
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
  }

  std::string ident(const char* what) {
    skip_space();
    if (!ident_start(peek())) fail(std::string("expected ") + what + found());
    std::string out;
    while (!at_end() && ident_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  std::int64_t integer() {
    skip_space();
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      advance();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer" + found());
    std::int64_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      if (v > (INT64_MAX - 9) / 10) fail("integer too large");
      v = v * 10 + (peek() - '0');
      advance();
    }
    return neg ? -v : v;
  }

  /// Raw polynomial text up to a top-level ',' or the closing bracket.
  PolyText poly_text(char close) {
    skip_space();
    PolyText out{"", here()};
    int depth = 0;
    while (!at_end()) {
      char c = peek();
      if (depth == 0 && (c == ',' || c == close)) break;
      if (c == ';' || c == '[' || c == ']' || c == '#') break;
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (!std::isspace(static_cast<unsigned char>(c))) out.text += c;
      advance();
    }
    if (out.text.empty()) throw ScriptError(out.pos, "expected a polynomial" + found());
    return out;
  }

  std::vector<PolyText> poly_list(char close) {
    std::vector<PolyText> out;
    skip_space();
    if (peek() == close) {
      advance();
      return out;
    }
    while (true) {
      out.push_back(poly_text(close));
      if (accept(',')) continue;
      expect(close);
      return out;
    }
  }

  std::variant<RingLiteral, std::string> ring_expr() {
    skip_space();
    const SourcePos start = here();
    std::string head = ident("a ring");
    skip_space();
    if (peek() != '[') return head;
    if (head.size() < 2 || head[0] != 'F' || head.find_first_not_of("0123456789", 1) != std::string::npos)
      throw ScriptError(start, "a ring literal starts with F followed by a prime, as in F5[x, y]");
    RingLiteral lit;
    const auto p = std::stoull(head.substr(1));
    if (p > UINT32_MAX) throw ScriptError(start, "characteristic too large");
    lit.p = static_cast<std::uint32_t>(p);
    expect('[');
    if (!accept(']')) {
      while (true) {
        RingVar v{ident("a variable name"), 1};
        if (accept(':')) v.weight = static_cast<int>(integer());
        lit.vars.push_back(v);
        if (accept(',')) continue;
        expect(']');
        break;
      }
    }
    if (accept('/')) {
      expect('(');
      lit.ideal = poly_list(')');
    }
    return lit;
  }

  Arg arg() {
    skip_space();
    Arg a;
    a.pos = here();
    const char c = peek();
    if (c == '[') {
      advance();
      skip_space();
      if (peek() == '[') {
        a.kind = Arg::Kind::Matrix;
        while (true) {
          expect('[');
          a.matrix.push_back(poly_list(']'));
          if (accept(',')) continue;
          expect(']');
          break;
        }
      } else {
        a.kind = Arg::Kind::IntList;
        if (!accept(']')) {
          while (true) {
            a.ints.push_back(integer());
            if (accept(',')) continue;
            expect(']');
            break;
          }
        }
      }
    } else if (c == '(') {
      advance();
      a.kind = Arg::Kind::PolyList;
      a.polys = poly_list(')');
    } else if (std::isdigit(static_cast<unsigned char>(c)) || ((c == '-' || c == '+') && std::isdigit(static_cast<unsigned char>(peek2())))) {
      a.kind = Arg::Kind::Int;
      a.value = integer();
    } else if (ident_start(c)) {
      a.kind = Arg::Kind::Ident;
      a.ident = ident("an argument");
    } else {
      fail("expected an argument" + found());
    }
    return a;
  }

  /// A name, a number or a ring literal: text up to whitespace or ';' outside brackets.
  std::string option_value() {
    std::string out;
    int depth = 0;
    while (!at_end()) {
      const char c = peek();
      if (depth == 0 && (c == ';' || c == '#' || std::isspace(static_cast<unsigned char>(c)))) break;
      if (c == '[' || c == '(') ++depth;
      if ((c == ']' || c == ')') && --depth < 0) fail("unbalanced bracket in option value");
      if (!std::isspace(static_cast<unsigned char>(c))) out += c;
      advance();
    }
    if (depth != 0) fail("unbalanced bracket in option value");
    return out;
  }

  bool option_ahead() {
    skip_space();
    return peek() == '-' && peek2() == '-';
  }

  Option option() {
    skip_space();
    Option o;
    o.pos = here();
    advance();
    advance();
    o.name = ident("an option name");
    skip_space();
    if (!at_end() && peek() != ';' && !option_ahead()) o.value = option_value();
    return o;
  }

  Statement statement() {
    skip_space();
    const SourcePos pos = here();
    const std::string word = ident("a statement");
    if (word == "ring") {
      RingDecl d;
      d.pos = pos;
      d.name = ident("a ring name");
      expect('=');
      d.value = ring_expr();
      expect(';');
      return d;
    }
    if (word == "module") {
      ModuleDecl d;
      d.pos = pos;
      d.name = ident("a module name");
      expect('=');
      d.constructor = ident("a module constructor");
      while (true) {
        skip_space();
        if (peek() == ';' || at_end()) break;
        d.args.push_back(arg());
      }
      expect(';');
      return d;
    }
    if (word == "compute" || word == "check" || word == "verify" || word == "search" || word == "oracle-check") {
      Command c;
      c.pos = pos;
      c.verb = word;
      if (word != "oracle-check") c.target = ident(word == "compute" ? "a computation" : "a statement id");
      while (true) {
        skip_space();
        if (peek() == ';' || at_end()) break;
        if (option_ahead()) {
          c.options.push_back(option());
        } else {
          if (!c.options.empty()) fail("arguments must precede options");
          c.args.push_back(arg());
        }
      }
      expect(';');
      return c;
    }
    throw ScriptError(pos, "unknown statement '" + word + "'");
  }
};

inline Script parse(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------------------
// Printer: one statement per line; the output parses back to an equal script.

inline std::string join_polys(const std::vector<PolyText>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].text;
  return s;
}

inline std::string print(const RingLiteral& r) {
  std::string s = "F" + std::to_string(r.p) + "[";
  for (std::size_t i = 0; i < r.vars.size(); ++i)
    s += (i ? ", " : "") + r.vars[i].name + ":" + std::to_string(r.vars[i].weight);
  s += "]";
  if (!r.ideal.empty()) s += "/(" + join_polys(r.ideal) + ")";
  return s;
}

inline std::string print(const Arg& a) {
  switch (a.kind) {
    case Arg::Kind::Ident: return a.ident;
    case Arg::Kind::Int: return std::to_string(a.value);
    case Arg::Kind::Matrix: {
      std::string s = "[";
      for (std::size_t i = 0; i < a.matrix.size(); ++i) s += (i ? ", [" : "[") + join_polys(a.matrix[i]) + "]";
      return s + "]";
    }
    case Arg::Kind::IntList: {
      std::string s = "[";
      for (std::size_t i = 0; i < a.ints.size(); ++i) s += (i ? ", " : "") + std::to_string(a.ints[i]);
      return s + "]";
    }
    default: return "(" + join_polys(a.polys) + ")";
  }
}

inline std::string print(const Statement& st) {
  if (auto* r = std::get_if<RingDecl>(&st)) {
    std::string v = std::holds_alternative<std::string>(r->value) ? std::get<std::string>(r->value)
                                                                  : print(std::get<RingLiteral>(r->value));
    return "ring " + r->name + " = " + v + ";";
  }
  if (auto* m = std::get_if<ModuleDecl>(&st)) {
    std::string s = "module " + m->name + " = " + m->constructor;
    for (auto& a : m->args) s += " " + print(a);
    return s + ";";
  }
  auto& c = std::get<Command>(st);
  std::string s = c.verb;
  if (!c.target.empty()) s += " " + c.target;
  for (auto& a : c.args) s += " " + print(a);
  for (auto& o : c.options) {
    s += " --" + o.name;
    if (o.value) s += " " + *o.value;
  }
  return s + ";";
}

inline std::string print(const Script& sc) {
  std::string s;
  for (auto& st : sc.statements) s += print(st) + "\n";
  return s;
}

}  // namespace homlab::script
