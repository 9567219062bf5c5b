#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "monomial.hpp"

namespace homlab {

/// Ambient polynomial ring k[x_1..x_n] with positive integer weights.
struct PolyRing {
  PrimeField field;
  std::vector<int> weights;
  std::vector<std::string> names;

  PolyRing(std::uint32_t p, std::vector<int> w, std::vector<std::string> vars = {})
      : field(p), weights(std::move(w)), names(std::move(vars)) {
    if (weights.empty() || weights.size() > kMaxVars)
      throw std::invalid_argument("variable count must be between 1 and " + std::to_string(kMaxVars));
    for (int wt : weights)
      if (wt <= 0) throw std::invalid_argument("variable weights must be positive");
    if (names.empty()) {
      static const char* kDefault[] = {"x", "y", "z", "w", "u", "v", "s", "t"};
      for (std::size_t i = 0; i < weights.size(); ++i) names.emplace_back(kDefault[i]);
    }
    if (names.size() != weights.size()) throw std::invalid_argument("one name per variable required");
  }

  int nvars() const { return static_cast<int>(weights.size()); }
  std::uint32_t p() const { return field.characteristic(); }
  Monomial var(int i) const { return variable_monomial(i, weights); }

  bool operator==(const PolyRing& o) const {
    return field == o.field && weights == o.weights && names == o.names;
  }
};

struct Term {
  Monomial mono;
  Coeff coeff;
};

/// Sparse polynomial; terms sorted strictly decreasing in weighted grevlex, no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Term> sorted_terms) : terms_(std::move(sorted_terms)) {}

  static Polynomial constant(Coeff c) {
    if (c == 0) return {};
    return Polynomial({Term{Monomial{}, c}});
  }
  static Polynomial monomial(const Monomial& m, Coeff c = 1) {
    if (c == 0) return {};
    return Polynomial({Term{m, c}});
  }
  /// Builds from unsorted terms, combining duplicates.
  static Polynomial from_terms(std::vector<Term> terms, const PrimeField& f) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return compare_grevlex(a.mono, b.mono) > 0; });
    std::vector<Term> out;
    for (auto& t : terms) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = f.add(out.back().coeff, t.coeff);
        if (out.back().coeff == 0) out.pop_back();
      } else if (t.coeff != 0) {
        out.push_back(t);
      }
    }
    return Polynomial(std::move(out));
  }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }

  bool is_homogeneous() const {
    for (auto& t : terms_)
      if (t.mono.degree != terms_.front().mono.degree) return false;
    return true;
  }
  /// Weighted degree of a homogeneous nonzero polynomial.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty() || !is_homogeneous()) return std::nullopt;
    return terms_.front().mono.degree;
  }
  /// Nonzero constant, i.e. a unit of a graded connected ring.
  bool is_unit_constant() const { return terms_.size() == 1 && terms_.front().mono.degree == 0; }
  Coeff constant_term() const {
    if (!terms_.empty() && terms_.back().mono.degree == 0) return terms_.back().coeff;
    return 0;
  }

  bool operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
  }

 private:
  std::vector<Term> terms_;
};

/// a + c * m * b
inline Polynomial add_scaled(const Polynomial& a, const Polynomial& b, Coeff c, const Monomial& m,
                             const PrimeField& f) {
  if (c == 0 || b.is_zero()) return a;
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    if (ib == eb) {
      out.push_back(*ia++);
      continue;
    }
    Monomial mb = ib->mono * m;
    int cmp = ia == ea ? -1 : compare_grevlex(ia->mono, mb);
    if (cmp > 0) {
      out.push_back(*ia++);
    } else if (cmp < 0) {
      out.push_back(Term{mb, f.mul(c, ib->coeff)});
      ++ib;
    } else {
      Coeff s = f.add(ia->coeff, f.mul(c, ib->coeff));
      if (s) out.push_back(Term{mb, s});
      ++ia;
      ++ib;
    }
  }
  return Polynomial(std::move(out));
}

inline Polynomial add(const Polynomial& a, const Polynomial& b, const PrimeField& f) {
  return add_scaled(a, b, 1, Monomial{}, f);
}
inline Polynomial sub(const Polynomial& a, const Polynomial& b, const PrimeField& f) {
  return add_scaled(a, b, f.neg(1), Monomial{}, f);
}
inline Polynomial scale(const Polynomial& a, Coeff c, const PrimeField& f) {
  return add_scaled(Polynomial{}, a, c, Monomial{}, f);
}
inline Polynomial mul(const Polynomial& a, const Polynomial& b, const PrimeField& f) {
  Polynomial r;
  for (auto& t : a.terms()) r = add_scaled(r, b, t.coeff, t.mono, f);
  return r;
}
inline Polynomial pow(const Polynomial& a, unsigned e, const PrimeField& f) {
  Polynomial r = Polynomial::constant(1);
  for (unsigned i = 0; i < e; ++i) r = mul(r, a, f);
  return r;
}

inline std::string format_monomial(const Monomial& m, const PolyRing& ring) {
  std::string s;
  for (int i = 0; i < ring.nvars(); ++i) {
    if (!m.exp[i]) continue;
    if (!s.empty()) s += "*";
    s += ring.names[i];
    if (m.exp[i] > 1) s += "^" + std::to_string(m.exp[i]);
  }
  return s;
}

/// Infix rendering that the script parser reads back.
inline std::string format_polynomial(const Polynomial& poly, const PolyRing& ring) {
  if (poly.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto& t : poly.terms()) {
    std::int64_t c = ring.field.to_signed(t.coeff);
    std::string mono = format_monomial(t.mono, ring);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? "-" : "+";
    }
    std::int64_t a = c < 0 ? -c : c;
    if (mono.empty())
      s += std::to_string(a);
    else if (a == 1)
      s += mono;
    else
      s += std::to_string(a) + "*" + mono;
    first = false;
  }
  return s;
}

}  // namespace homlab
