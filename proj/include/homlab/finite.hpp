#pragma once

#include <array>
#include <map>
#include <vector>

#include "linalg.hpp"
#include "module.hpp"

namespace homlab {

/// A finite-dimensional graded module given by one matrix per variable.
/// Basis vector j lives in degree degrees[j]; column j of action[v] is x_v * b_j.
struct LinModule {
  PrimeField field{2};
  std::vector<int> weights;
  std::vector<int> degrees;
  std::vector<DenseMatrix> action;

  std::size_t dim() const { return degrees.size(); }
  int nvars() const { return static_cast<int>(weights.size()); }
};

/// Basis of a finite-length FPModule by standard monomials, and the variable action on it.
inline LinModule realize(const FPModule& M) {
  if (!M.finite_length()) throw ModuleError("module does not have finite length");
  const RingPtr& R = M.ring();
  LinModule L{R->field(), R->weights(), {}, {}};
  if (M.is_zero()) {
    L.action.assign(static_cast<std::size_t>(R->nvars()), DenseMatrix(0, 0));
    return L;
  }
  auto lead = M.leading_data();
  const int top = *lead.top_degree();
  using Key = std::pair<std::uint32_t, std::array<std::uint16_t, kMaxVars>>;
  std::map<Key, std::size_t> index;
  std::vector<std::pair<Monomial, std::uint32_t>> basis;
  for (std::uint32_t i = 0; i < M.num_generators(); ++i) {
    const int base_deg = M.generator_degrees()[i];
    for (int e = 0; base_deg + e <= top; ++e)
      for (auto& m : monomials_of_degree(e, R->weights())) {
        bool standard = true;
        for (auto& lt : lead.leading[i])
          if (divides(lt, m)) {
            standard = false;
            break;
          }
        if (!standard) continue;
        index[{i, m.exp}] = basis.size();
        basis.emplace_back(m, i);
        L.degrees.push_back(base_deg + e);
      }
  }
  const std::size_t n = basis.size();
  const auto& gb = M.relation_gb();
  for (int v = 0; v < R->nvars(); ++v) {
    DenseMatrix A(n, n);
    Monomial xv = R->base().var(v);
    for (std::size_t j = 0; j < n; ++j) {
      Vec t{VTerm{basis[j].first * xv, basis[j].second, 1}};
      for (auto& term : gb.reduce(std::move(t))) A(index.at({term.pos, term.mono.exp}), j) = term.coeff;
    }
    L.action.push_back(std::move(A));
  }
  return L;
}

/// Presentation of a linear module over R: generators are the basis vectors, relations
/// encode the action; then minimized.
inline FPModule present(const RingPtr& R, const LinModule& L) {
  const std::size_t n = L.dim();
  std::vector<Column> rel;
  for (int v = 0; v < L.nvars(); ++v) {
    Polynomial xv = Polynomial::monomial(R->base().var(v));
    for (std::size_t j = 0; j < n; ++j) {
      Column c(n);
      c[j] = xv;
      for (std::size_t k = 0; k < n; ++k)
        if (L.action[v](k, j)) c[k] = Polynomial::constant(L.field.neg(L.action[v](k, j)));
      rel.push_back(std::move(c));
    }
  }
  return minimal_presentation(FPModule(R, L.degrees, rel));
}

/// Graded k-dual with the contragredient action.
inline LinModule graded_dual(const LinModule& L) {
  LinModule D{L.field, L.weights, {}, {}};
  for (int d : L.degrees) D.degrees.push_back(-d);
  for (auto& A : L.action) D.action.push_back(A.transposed());
  return D;
}

/// Dimension of each graded piece, keyed by degree.
inline std::map<int, std::size_t> graded_dims(const LinModule& L) {
  std::map<int, std::size_t> out;
  for (int d : L.degrees) ++out[d];
  return out;
}

}  // namespace homlab
