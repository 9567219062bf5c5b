#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace homlab {

inline constexpr std::size_t kMaxVars = 8;

/// Exponent vector with its cached weighted degree.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  int degree = 0;

  bool operator==(const Monomial& o) const { return exp == o.exp; }
  bool is_one() const { return degree == 0 && std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; }); }
};

inline Monomial make_monomial(std::span<const int> exps, std::span<const int> weights) {
  if (exps.size() > kMaxVars) throw std::invalid_argument("too many variables");
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0) throw std::invalid_argument("negative exponent");
    m.exp[i] = static_cast<std::uint16_t>(exps[i]);
    m.degree += exps[i] * weights[i];
  }
  return m;
}

inline Monomial variable_monomial(int var, std::span<const int> weights) {
  Monomial m;
  m.exp[var] = 1;
  m.degree = weights[var];
  return m;
}

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
  r.degree = a.degree + b.degree;
  return r;
}

inline bool divides(const Monomial& a, const Monomial& b) {
  if (a.degree > b.degree) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] > b.exp[i]) return false;
  return true;
}

/// b / a; requires divides(a, b).
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(b.exp[i] - a.exp[i]);
  r.degree = b.degree - a.degree;
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b, std::span<const int> weights) {
  Monomial r;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    r.exp[i] = std::max(a.exp[i], b.exp[i]);
    r.degree += r.exp[i] * weights[i];
  }
  return r;
}

inline Monomial gcd(const Monomial& a, const Monomial& b, std::span<const int> weights) {
  Monomial r;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    r.exp[i] = std::min(a.exp[i], b.exp[i]);
    r.degree += r.exp[i] * weights[i];
  }
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] && b.exp[i]) return false;
  return true;
}

/// Weighted graded reverse lexicographic comparison: -1, 0 or 1.
inline int compare_grevlex(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? -1 : 1;
  }
  return 0;
}

/// All monomials in `nvars` variables of weighted degree exactly `degree`.
inline std::vector<Monomial> monomials_of_degree(int degree, std::span<const int> weights) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial cur;
  const int n = static_cast<int>(weights.size());
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == n - 1) {
      if (remaining % weights[var] == 0) {
        cur.exp[var] = static_cast<std::uint16_t>(remaining / weights[var]);
        cur.degree = degree;
        out.push_back(cur);
        cur.exp[var] = 0;
      }
      return;
    }
    for (int e = 0; e * weights[var] <= remaining; ++e) {
      cur.exp[var] = static_cast<std::uint16_t>(e);
      self(self, var + 1, remaining - e * weights[var]);
    }
    cur.exp[var] = 0;
  };
  if (n == 0) {
    if (degree == 0) out.push_back(cur);
    return out;
  }
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return compare_grevlex(a, b) > 0; });
  return out;
}

inline int lcm_of(std::span<const int> values) {
  int r = 1;
  for (int v : values) r = std::lcm(r, v);
  return r;
}

}  // namespace homlab
