#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace homlab {

/// Dense row-major matrix over F_p.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Coeff& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Coeff operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  bool operator==(const DenseMatrix& o) const = default;

  bool is_zero() const {
    for (Coeff c : data_)
      if (c) return false;
    return true;
  }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<Coeff> column(std::size_t c) const {
    std::vector<Coeff> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Coeff> data_;
};

inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b, const PrimeField& f) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimensions do not match");
  DenseMatrix out(a.rows(), b.cols());
  const std::uint64_t p = f.characteristic();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Coeff x = a(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j)) out(i, j) = static_cast<Coeff>((out(i, j) + static_cast<std::uint64_t>(x) * b(k, j)) % p);
    }
  return out;
}

inline DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b, const PrimeField& f) {
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.add(a(i, j), b(i, j));
  return out;
}

inline std::vector<Coeff> apply(const DenseMatrix& a, const std::vector<Coeff>& v, const PrimeField& f) {
  std::vector<Coeff> out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) && v[j]) out[i] = f.add(out[i], f.mul(a(i, j), v[j]));
  return out;
}

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(DenseMatrix& m, const PrimeField& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    Coeff inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t k = 0; k < m.rows(); ++k) {
      if (k == r || m(k, c) == 0) continue;
      Coeff s = f.neg(m(k, c));
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j)) m(k, j) = f.add(m(k, j), f.mul(s, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(DenseMatrix m, const PrimeField& f) { return rref(m, f).size(); }

/// Basis of {v : m v = 0}, as columns of the returned matrix.
inline DenseMatrix nullspace(DenseMatrix m, const PrimeField& f) {
  auto piv = rref(m, f);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  DenseMatrix out(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    out(free_cols[k], k) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) out(piv[r], k) = f.neg(m(r, free_cols[k]));
  }
  return out;
}

inline Coeff determinant(DenseMatrix m, const PrimeField& f) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Coeff det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    Coeff inv = f.inv(m(c, c));
    for (std::size_t k = c + 1; k < n; ++k) {
      if (!m(k, c)) continue;
      Coeff s = f.neg(f.mul(m(k, c), inv));
      for (std::size_t j = c; j < n; ++j) m(k, j) = f.add(m(k, j), f.mul(s, m(c, j)));
    }
  }
  return det;
}

/// Stacks the given columns into a matrix.
inline DenseMatrix from_columns(std::size_t rows, const std::vector<std::vector<Coeff>>& cols) {
  DenseMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

/// Indices of a maximal linearly independent subset of the columns, greedily from the left.
inline std::vector<std::size_t> independent_columns(const DenseMatrix& m, const PrimeField& f) {
  DenseMatrix t = m;
  return rref(t, f);
}

}  // namespace homlab
