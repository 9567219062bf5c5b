#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monomial.hpp"

namespace homlab {

/// Integer Laurent polynomial in t.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(int exp, std::int64_t c = 1) {
    LaurentPoly p;
    if (c) p.c_[exp] = c;
    return p;
  }

  const std::map<int, std::int64_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  std::int64_t at(int e) const {
    auto it = c_.find(e);
    return it == c_.end() ? 0 : it->second;
  }
  std::int64_t value_at_one() const {
    std::int64_t s = 0;
    for (auto& [e, c] : c_) s += c;
    return s;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (auto& [e, c] : o.c_) bump(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (auto& [e, c] : o.c_) bump(e, -c);
    return *this;
  }
  LaurentPoly shifted(int k) const {
    LaurentPoly r;
    for (auto& [e, c] : c_) r.c_[e + k] = c;
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (auto& [ea, ca] : a.c_)
      for (auto& [eb, cb] : b.c_) r.bump(ea + eb, ca * cb);
    return r;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }

  /// Exact quotient a / b, or nullopt if b does not divide a.
  static std::optional<LaurentPoly> divide(LaurentPoly a, const LaurentPoly& b) {
    if (b.is_zero()) return std::nullopt;
    LaurentPoly q;
    auto [bl, bc] = *b.c_.begin();
    int guard = 0;
    while (!a.is_zero()) {
      auto [al, ac] = *a.c_.begin();
      if (ac % bc != 0 || ++guard > 10000) return std::nullopt;
      std::int64_t f = ac / bc;
      int e = al - bl;
      if (!a.is_zero() && a.c_.rbegin()->first < b.c_.rbegin()->first + e) return std::nullopt;
      q.bump(e, f);
      a -= LaurentPoly::monomial(e, f) * b;
    }
    return q;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto& [e, c] : c_) {
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      std::int64_t a = c < 0 ? -c : c;
      s += std::to_string(a);
      if (e) s += "*t^" + std::to_string(e);
    }
    return s;
  }

 private:
  void bump(int e, std::int64_t c) {
    if (!c) return;
    auto& v = c_[e];
    v += c;
    if (!v) c_.erase(e);
  }
  std::map<int, std::int64_t> c_;
};

namespace detail {

inline std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.degree < b.degree; });
  std::vector<Monomial> out;
  for (auto& g : gens) {
    bool red = false;
    for (auto& o : out)
      if (divides(o, g)) {
        red = true;
        break;
      }
    if (!red) out.push_back(g);
  }
  return out;
}

/// Numerator K(t) with HS(S/J) = K(t) / prod(1 - t^w_i).
inline LaurentPoly numerator(std::vector<Monomial> gens, std::span<const int> weights) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return LaurentPoly::monomial(0);
  for (auto& g : gens)
    if (g.degree == 0) return {};
  // Pure powers in distinct variables form a complete intersection.
  bool ci = true;
  for (std::size_t i = 0; i < gens.size() && ci; ++i)
    for (std::size_t j = i + 1; j < gens.size() && ci; ++j)
      if (!coprime(gens[i], gens[j])) ci = false;
  if (ci) {
    LaurentPoly r = LaurentPoly::monomial(0);
    for (auto& g : gens) r = r * (LaurentPoly::monomial(0) - LaurentPoly::monomial(g.degree));
    return r;
  }
  Monomial pivot = gens.back();
  gens.pop_back();
  std::vector<Monomial> colon;
  colon.reserve(gens.size());
  for (auto& g : gens) colon.push_back(quotient(g, gcd(g, pivot, weights)));
  return numerator(gens, weights) - numerator(std::move(colon), weights).shifted(pivot.degree);
}

}  // namespace detail

/// Leading-term data of a graded module S^n / U: for each basis position its degree and
/// the leading monomials of a Groebner basis of U on that position.
struct MonomialModule {
  std::vector<int> weights;
  std::vector<int> degrees;
  std::vector<std::vector<Monomial>> leading;

  int nvars() const { return static_cast<int>(weights.size()); }

  bool position_is_zero(std::size_t i) const {
    for (auto& m : leading[i])
      if (m.degree == 0) return true;
    return false;
  }

  std::int64_t hilbert_function(int d) const {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      if (position_is_zero(i)) continue;
      for (auto& m : monomials_of_degree(d - degrees[i], weights)) {
        bool in = false;
        for (auto& l : leading[i])
          if (divides(l, m)) {
            in = true;
            break;
          }
        if (!in) ++total;
      }
    }
    return total;
  }

  /// Krull dimension of the module; -1 for the zero module.
  int krull_dim() const {
    int best = -1;
    const int n = nvars();
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      if (position_is_zero(i)) continue;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool ok = true;
        for (auto& l : leading[i]) {
          bool inside = true;
          for (int v = 0; v < n; ++v)
            if (l.exp[v] && !(mask & (1u << v))) inside = false;
          if (inside) {
            ok = false;
            break;
          }
        }
        if (ok) best = size;
      }
    }
    return best;
  }

  bool is_zero() const { return krull_dim() < 0; }
  bool finite_length() const { return krull_dim() <= 0; }

  /// Numerator of the Hilbert series over prod(1 - t^w).
  LaurentPoly hilbert_numerator() const {
    LaurentPoly r;
    for (std::size_t i = 0; i < degrees.size(); ++i)
      r += detail::numerator(leading[i], weights).shifted(degrees[i]);
    return r;
  }

  /// Largest degree carrying a standard monomial, for finite-length modules.
  std::optional<int> top_degree() const {
    if (!finite_length()) return std::nullopt;
    std::optional<int> top;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      if (position_is_zero(i)) continue;
      int bound = 0;
      for (int v = 0; v < nvars(); ++v) {
        int pure = -1;
        for (auto& l : leading[i]) {
          bool only_v = true;
          for (int u = 0; u < nvars(); ++u)
            if (u != v && l.exp[u]) only_v = false;
          if (only_v && (pure < 0 || l.exp[v] < pure)) pure = l.exp[v];
        }
        bound += (pure - 1) * weights[v];
      }
      int t = degrees[i] + bound;
      if (!top || t > *top) top = t;
    }
    return top;
  }

  std::optional<int> bottom_degree() const {
    std::optional<int> b;
    for (std::size_t i = 0; i < degrees.size(); ++i)
      if (!position_is_zero(i) && (!b || degrees[i] < *b)) b = degrees[i];
    return b;
  }

  /// Hilbert series as a Laurent polynomial; only for finite length.
  std::optional<LaurentPoly> hilbert_polynomial_series() const {
    if (is_zero()) return LaurentPoly{};
    auto top = top_degree();
    if (!top) return std::nullopt;
    LaurentPoly r;
    auto lo = bottom_degree();
    if (!lo) return r;
    for (int d = *lo; d <= *top; ++d) r += LaurentPoly::monomial(d, hilbert_function(d));
    return r;
  }

  std::optional<std::int64_t> length() const {
    auto s = hilbert_polynomial_series();
    if (!s) return std::nullopt;
    return s->value_at_one();
  }
};

}  // namespace homlab
