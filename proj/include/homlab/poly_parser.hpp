#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "polynomial.hpp"

namespace homlab {

/// Raised for malformed infix polynomial text; `offset` is the byte position of the problem.
class PolyParseError : public std::runtime_error {
 public:
  PolyParseError(const std::string& msg, std::size_t offset) : std::runtime_error(msg), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Recursive-descent reader for infix polynomials: + - * ^, integers, variables, parentheses.
class PolyParser {
 public:
  PolyParser(const PolyRing& ring, std::string_view text) : ring_(ring), s_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (i_ != s_.size()) throw PolyParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return p;
  }

 private:
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    const auto& f = ring_.field;
    Polynomial acc;
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    acc = term();
    if (negate) acc = scale(acc, f.neg(1), f);
    while (true) {
      if (eat('+'))
        acc = add(acc, term(), f);
      else if (eat('-'))
        acc = sub(acc, term(), f);
      else
        break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (eat('*')) acc = mul(acc, factor(), ring_.field);
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (eat('^')) {
      skip_ws();
      std::size_t start = i_;
      unsigned long e = read_uint();
      if (e > 1000) throw PolyParseError("exponent too large", start);
      b = pow(b, static_cast<unsigned>(e), ring_.field);
    }
    return b;
  }

  unsigned long read_uint() {
    skip_ws();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw PolyParseError("expected a number", start);
    return std::stoul(std::string(s_.substr(start, i_ - start)));
  }

  Polynomial base() {
    skip_ws();
    if (i_ >= s_.size()) throw PolyParseError("unexpected end of polynomial", i_);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Polynomial p = expr();
      if (!eat(')')) throw PolyParseError("expected ')'", i_);
      return p;
    }
    if (c == '-') {
      ++i_;
      return scale(base(), ring_.field.neg(1), ring_.field);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string digits(s_.substr(start, i_ - start));
      std::uint64_t v = 0;
      for (char d : digits) v = (v * 10 + static_cast<unsigned>(d - '0')) % ring_.p();
      return Polynomial::constant(static_cast<Coeff>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string name(s_.substr(start, i_ - start));
      for (int v = 0; v < ring_.nvars(); ++v)
        if (ring_.names[v] == name) return Polynomial::monomial(ring_.var(v));
      throw PolyParseError("unknown variable '" + name + "'", start);
    }
    throw PolyParseError("unexpected '" + std::string(1, c) + "'", i_);
  }

  const PolyRing& ring_;
  std::string_view s_;
  std::size_t i_ = 0;
};

inline Polynomial parse_polynomial(const PolyRing& ring, std::string_view text) {
  return PolyParser(ring, text).parse();
}

}  // namespace homlab
