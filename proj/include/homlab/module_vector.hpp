#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polynomial.hpp"

namespace homlab {

/// A term m * e_pos of a free S-module.
struct VTerm {
  Monomial mono;
  std::uint32_t pos;
  Coeff coeff;
};

/// Element of a free module over the ambient polynomial ring, terms strictly decreasing
/// in the module order that produced it.
using Vec = std::vector<VTerm>;

/// Term order on a free module with graded basis.
///
/// Default: weighted degree (monomial degree plus basis degree), then grevlex, then position
/// (term over position). With a block split s >= 0, every term on a position < s dominates
/// every term on a position >= s; that elimination order is what syzygy extraction uses.
class ModuleOrder {
 public:
  ModuleOrder() = default;
  explicit ModuleOrder(std::vector<int> basis_degrees, int block_split = -1)
      : degrees_(std::move(basis_degrees)), split_(block_split) {}

  int rank() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& basis_degrees() const { return degrees_; }
  int block_split() const { return split_; }

  int degree(const Monomial& m, std::uint32_t pos) const { return m.degree + degrees_[pos]; }
  int degree(const VTerm& t) const { return degree(t.mono, t.pos); }

  int compare(const Monomial& a, std::uint32_t pa, const Monomial& b, std::uint32_t pb) const {
    if (split_ >= 0) {
      bool fa = static_cast<int>(pa) < split_, fb = static_cast<int>(pb) < split_;
      if (fa != fb) return fa ? 1 : -1;
    }
    int da = degree(a, pa), db = degree(b, pb);
    if (da != db) return da < db ? -1 : 1;
    int c = compare_grevlex(a, b);
    if (c) return c;
    if (pa != pb) return pa < pb ? 1 : -1;
    return 0;
  }

 private:
  std::vector<int> degrees_;
  int split_ = -1;
};

/// a[from..] + c * m * b, merged in `order`.
inline Vec vec_add_scaled(const Vec& a, std::size_t from, const Vec& b, Coeff c, const Monomial& m,
                          const ModuleOrder& order, const PrimeField& f) {
  Vec out;
  out.reserve(a.size() - from + b.size());
  std::size_t ia = from, ib = 0;
  while (ia < a.size() || ib < b.size()) {
    if (ib == b.size() || c == 0) {
      if (ia == a.size()) break;
      out.push_back(a[ia++]);
      continue;
    }
    Monomial mb = b[ib].mono * m;
    int cmp = ia == a.size() ? -1 : order.compare(a[ia].mono, a[ia].pos, mb, b[ib].pos);
    if (cmp > 0) {
      out.push_back(a[ia++]);
    } else if (cmp < 0) {
      out.push_back(VTerm{mb, b[ib].pos, f.mul(c, b[ib].coeff)});
      ++ib;
    } else {
      Coeff s = f.add(a[ia].coeff, f.mul(c, b[ib].coeff));
      if (s) out.push_back(VTerm{mb, b[ib].pos, s});
      ++ia;
      ++ib;
    }
  }
  return out;
}

inline Vec vec_sort(Vec v, const ModuleOrder& order, const PrimeField& f) {
  std::sort(v.begin(), v.end(), [&](const VTerm& a, const VTerm& b) {
    return order.compare(a.mono, a.pos, b.mono, b.pos) > 0;
  });
  Vec out;
  for (auto& t : v) {
    if (!out.empty() && out.back().pos == t.pos && out.back().mono == t.mono) {
      out.back().coeff = f.add(out.back().coeff, t.coeff);
      if (!out.back().coeff) out.pop_back();
    } else if (t.coeff) {
      out.push_back(t);
    }
  }
  return out;
}

inline void vec_make_monic(Vec& v, const PrimeField& f) {
  if (v.empty() || v.front().coeff == 1) return;
  Coeff inv = f.inv(v.front().coeff);
  for (auto& t : v) t.coeff = f.mul(t.coeff, inv);
}

/// Column of polynomials (one per row) as a module vector, shifted by `offset` positions.
inline Vec column_to_vec(const std::vector<Polynomial>& column, const ModuleOrder& order, const PrimeField& f,
                         std::uint32_t offset = 0) {
  Vec v;
  for (std::size_t r = 0; r < column.size(); ++r)
    for (auto& t : column[r].terms()) v.push_back(VTerm{t.mono, static_cast<std::uint32_t>(r + offset), t.coeff});
  return vec_sort(std::move(v), order, f);
}

/// Inverse of column_to_vec over positions [offset, offset + rows).
inline std::vector<Polynomial> vec_to_column(const Vec& v, std::size_t rows, const PrimeField& f,
                                             std::uint32_t offset = 0) {
  std::vector<std::vector<Term>> parts(rows);
  for (auto& t : v) {
    if (t.pos < offset || t.pos >= offset + rows) continue;
    parts[t.pos - offset].push_back(Term{t.mono, t.coeff});
  }
  std::vector<Polynomial> col;
  col.reserve(rows);
  for (auto& p : parts) col.push_back(Polynomial::from_terms(std::move(p), f));
  return col;
}

/// Degree of a homogeneous vector, nullopt for zero or inhomogeneous input.
inline std::optional<int> vec_degree(const Vec& v, const ModuleOrder& order) {
  if (v.empty()) return std::nullopt;
  int d = order.degree(v.front());
  for (auto& t : v)
    if (order.degree(t) != d) return std::nullopt;
  return d;
}

}  // namespace homlab
