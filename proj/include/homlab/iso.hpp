#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "homology.hpp"
#include "linalg.hpp"

namespace homlab {

enum class Tri { False, True, Inconclusive };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "inconclusive";
  }
}

/// Homogeneous maps of degree d from M to N, as matrices on minimal generators
/// (column l = image of the l-th minimal generator of M in N's minimal cover).
struct HomSpace {
  FPModule source, target;
  std::vector<Matrix> basis;
};

namespace detail {

/// Basis of the degree-d part of Hom, as matrices on minimal generators.
inline std::vector<Matrix> degree_piece(const HomModule& H, int d) {
  const RingPtr& R = H.source.ring();
  const std::size_t n = H.source.num_generators(), q = H.target.num_generators();
  std::vector<Matrix> out;
  if (n == 0 || q == 0) return out;
  FPModule X = hom_free_term(H.source.generator_degrees(), H.target);
  const auto& F = R->field();
  std::vector<Column> candidates;
  for (auto& g : H.generators) {
    auto e = column_degree(g, X.generator_degrees());
    if (!e || *e > d) continue;
    for (auto& s : R->standard_monomials(d - *e)) {
      Polynomial sp = Polynomial::monomial(s);
      Column c;
      for (auto& x : g) c.push_back(R->normal_form(mul(sp, x, F)));
      Column red = X.reduce(c);
      if (!column_is_zero(red)) candidates.push_back(std::move(red));
    }
  }
  using Key = std::pair<std::size_t, std::array<std::uint16_t, kMaxVars>>;
  std::map<Key, std::size_t> index;
  for (auto& c : candidates)
    for (std::size_t r = 0; r < c.size(); ++r)
      for (auto& t : c[r].terms()) index.try_emplace({r, t.mono.exp}, index.size());
  DenseMatrix coords(index.size(), candidates.size());
  for (std::size_t j = 0; j < candidates.size(); ++j)
    for (std::size_t r = 0; r < candidates[j].size(); ++r)
      for (auto& t : candidates[j][r].terms()) coords(index.at({r, t.mono.exp}), j) = t.coeff;
  for (auto j : independent_columns(coords, F)) {
    Matrix m = Matrix::zero(q, n);
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t k = 0; k < q; ++k) m.cols[l][k] = candidates[j][l * q + k];
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

inline HomSpace hom_degree_basis(const FPModule& M, const FPModule& N, int d = 0) {
  auto H = hom(M, N);
  return HomSpace{H.source, H.target, detail::degree_piece(H, d)};
}

inline std::int64_t hom_degree_dim(const FPModule& M, const FPModule& N, int d = 0) {
  return static_cast<std::int64_t>(hom_degree_basis(M, N, d).basis.size());
}

inline DenseMatrix constant_part(const Matrix& m) {
  DenseMatrix out(m.rows, m.ncols());
  for (std::size_t c = 0; c < m.ncols(); ++c)
    for (std::size_t r = 0; r < m.rows; ++r)
      if (m.cols[c][r].is_unit_constant()) out(r, c) = m.cols[c][r].leading().coeff;
  return out;
}

struct IsoResult {
  Tri verdict = Tri::Inconclusive;
  std::optional<Matrix> witness;
  std::string reason;
};

struct IsoOptions {
  std::size_t budget = 256;
  std::uint64_t seed = 1;
  std::uint64_t exhaustive_limit = 1u << 16;
  bool compare_fitting = true;
};

namespace detail {

inline std::vector<int> sorted_degrees(const FPModule& M) {
  auto d = M.generator_degrees();
  std::sort(d.begin(), d.end());
  return d;
}

inline std::int64_t socle_dim_or_zero(const FPModule& M) {
  auto s = socle(M);
  return s.is_zero() ? 0 : s.length();
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

namespace detail {

/// Cheap invariants shared by the graded and the local test. Returns a reason on mismatch.
inline std::optional<std::string> invariant_mismatch(const FPModule& A, const FPModule& B, const IsoOptions& opt) {
  const std::size_t n = A.num_generators();
  if (n != B.num_generators()) return "minimal numbers of generators differ";
  if (A.krull_dim() != B.krull_dim()) return "dimensions differ";
  if (A.finite_length() && A.length() != B.length()) return "lengths differ";
  if (socle_dim_or_zero(A) != socle_dim_or_zero(B)) return "socle dimensions differ";
  if (opt.compare_fitting) {
    std::size_t work = 0;
    const std::size_t m = std::max(A.relations().size(), B.relations().size());
    for (std::size_t s = 1; s <= n; ++s) work += binomial(n, s) * binomial(m, s);
    if (work <= 400)
      for (int j = 0; j < static_cast<int>(n); ++j)
        if (!(fitting_ideal(A, j) == fitting_ideal(B, j))) return "Fitting ideal " + std::to_string(j) + " differs";
  }
  return std::nullopt;
}

/// Looks for an invertible matrix in the span of the constant parts of `maps`.
/// Returns the combined map, nullopt when none exists (exhaustive), or Inconclusive.
struct InvertibleSearch {
  Tri found = Tri::Inconclusive;
  std::optional<Matrix> map;
  std::string how;
};

inline InvertibleSearch find_invertible(const std::vector<Matrix>& maps, std::size_t n, const PrimeField& F,
                                        const IsoOptions& opt) {
  std::vector<std::vector<Coeff>> flat;
  for (auto& m : maps) {
    DenseMatrix c = constant_part(m);
    std::vector<Coeff> v;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v.push_back(c(i, j));
    flat.push_back(std::move(v));
  }
  if (flat.empty()) return {Tri::False, std::nullopt, "no map is surjective"};
  auto proj = from_columns(n * n, flat);
  auto keep = independent_columns(proj, F);
  if (keep.empty()) return {Tri::False, std::nullopt, "no map is surjective"};

  auto combine = [&](const std::vector<Coeff>& coeffs) {
    DenseMatrix c(n, n);
    for (std::size_t t = 0; t < keep.size(); ++t) {
      if (!coeffs[t]) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          c(i, j) = F.add(c(i, j), F.mul(coeffs[t], flat[keep[t]][i * n + j]));
    }
    return c;
  };
  auto witness = [&](const std::vector<Coeff>& coeffs) {
    Matrix w = Matrix::zero(maps.front().rows, maps.front().ncols());
    for (std::size_t t = 0; t < keep.size(); ++t) {
      if (!coeffs[t]) continue;
      const Matrix& b = maps[keep[t]];
      for (std::size_t l = 0; l < b.ncols(); ++l)
        for (std::size_t k = 0; k < b.rows; ++k)
          w.cols[l][k] = add(w.cols[l][k], scale(b.cols[l][k], coeffs[t], F), F);
    }
    return w;
  };

  const std::uint64_t p = F.characteristic();
  double total = 1;
  for (std::size_t t = 0; t < keep.size(); ++t) total *= static_cast<double>(p);
  if (total <= static_cast<double>(opt.exhaustive_limit)) {
    std::vector<Coeff> coeffs(keep.size(), 0);
    while (true) {
      if (determinant(combine(coeffs), F) != 0) return {Tri::True, witness(coeffs), "exhaustive search"};
      std::size_t t = 0;
      while (t < coeffs.size() && ++coeffs[t] == p) coeffs[t++] = 0;
      if (t == coeffs.size()) break;
    }
    return {Tri::False, std::nullopt, "no map is invertible modulo m (exhaustive)"};
  }
  std::mt19937_64 rng(opt.seed);
  for (std::size_t s = 0; s < opt.budget; ++s) {
    std::vector<Coeff> coeffs(keep.size());
    for (auto& c : coeffs) c = static_cast<Coeff>(rng() % p);
    if (determinant(combine(coeffs), F) != 0) return {Tri::True, witness(coeffs), "random search"};
  }
  return {Tri::Inconclusive, std::nullopt, "search budget exhausted"};
}

/// Maps A -> B whose constant parts span all constant parts of maps A -> B.
inline std::vector<Matrix> constant_relevant_maps(const FPModule& A, const FPModule& B) {
  auto H = hom(A, B);
  std::set<int> degrees;
  for (int b : H.target.generator_degrees())
    for (int a : H.source.generator_degrees()) degrees.insert(b - a);
  std::vector<Matrix> out;
  for (int d : degrees)
    for (auto& m : degree_piece(H, d)) out.push_back(std::move(m));
  return out;
}

}  // namespace detail

/// Graded isomorphism test (no shift). True comes with a witness map on minimal
/// generators; False only when an invariant or an exhaustive search separates.
inline IsoResult is_isomorphic(const FPModule& M, const FPModule& N, const IsoOptions& opt = {}) {
  if (!M.ring()->same_ring(*N.ring())) return {Tri::False, std::nullopt, "different rings"};
  FPModule A = minimal_presentation(M), B = minimal_presentation(N);
  if (A.hilbert_numerator() != B.hilbert_numerator()) return {Tri::False, std::nullopt, "Hilbert series differ"};
  if (detail::sorted_degrees(A) != detail::sorted_degrees(B))
    return {Tri::False, std::nullopt, "generator degrees differ"};
  const std::size_t n = A.num_generators();
  if (n == 0) return {Tri::True, Matrix::zero(0, 0), "both zero"};
  if (detail::sorted_degrees(socle(A)) != detail::sorted_degrees(socle(B)))
    return {Tri::False, std::nullopt, "socle degrees differ"};
  if (auto why = detail::invariant_mismatch(A, B, opt)) return {Tri::False, std::nullopt, *why};
  // A degree-zero map is an isomorphism iff its constant part is invertible.
  auto found = detail::find_invertible(hom_degree_basis(A, B, 0).basis, n, A.ring()->field(), opt);
  return {found.found, found.map, found.how};
}

/// Isomorphism after localizing at the homogeneous maximal ideal, i.e. by maps that need
/// not be homogeneous. A map is surjective there iff its constant part is; two surjections
/// in opposite directions (one suffices for finite length) give an isomorphism.
inline IsoResult is_locally_isomorphic(const FPModule& M, const FPModule& N, const IsoOptions& opt = {}) {
  if (!M.ring()->same_ring(*N.ring())) return {Tri::False, std::nullopt, "different rings"};
  FPModule A = minimal_presentation(M), B = minimal_presentation(N);
  const std::size_t n = A.num_generators();
  if (n == 0 && B.num_generators() == 0) return {Tri::True, Matrix::zero(0, 0), "both zero"};
  if (auto why = detail::invariant_mismatch(A, B, opt)) return {Tri::False, std::nullopt, *why};
  const auto& F = A.ring()->field();
  auto forward = detail::find_invertible(detail::constant_relevant_maps(A, B), n, F, opt);
  if (forward.found != Tri::True) return {forward.found, std::nullopt, forward.how};
  if (A.finite_length()) return {Tri::True, forward.map, forward.how + ", equal lengths"};
  auto back = detail::find_invertible(detail::constant_relevant_maps(B, A), n, F, opt);
  if (back.found != Tri::True) return {back.found, std::nullopt, "reverse direction: " + back.how};
  return {Tri::True, forward.map, forward.how + " in both directions"};
}

/// Isomorphism allowing a single overall shift, fixed by the lowest generator degree.
inline IsoResult is_isomorphic_up_to_shift(const FPModule& M, const FPModule& N, const IsoOptions& opt = {}) {
  FPModule A = minimal_presentation(M), B = minimal_presentation(N);
  if (A.num_generators() == 0 || B.num_generators() == 0) return is_isomorphic(A, B, opt);
  int s = detail::sorted_degrees(A).front() - detail::sorted_degrees(B).front();
  return is_isomorphic(A, B.shifted(-s), opt);
}

/// Shifts s_1..s_r with HS(H) = HS(N) * sum t^{s_j}; nullopt if no such multiset exists.
inline std::optional<std::vector<int>> shift_multiset(const FPModule& H, const FPModule& N) {
  auto q = LaurentPoly::divide(H.hilbert_numerator(), N.hilbert_numerator());
  if (!q) return std::nullopt;
  std::vector<int> shifts;
  for (auto& [d, c] : q->coeffs()) {
    if (c < 0) return std::nullopt;
    for (std::int64_t i = 0; i < c; ++i) shifts.push_back(d);
  }
  return shifts;
}

/// Decides H = sum_j N(-s_j) with r summands, the graded reading of "H is isomorphic to N^r".
inline IsoResult is_isomorphic_to_power(const FPModule& H, const FPModule& N, std::size_t r,
                                        const IsoOptions& opt = {}) {
  if (N.is_zero()) return {H.is_zero() ? Tri::True : Tri::False, std::nullopt, "zero target"};
  auto shifts = shift_multiset(H, N);
  if (!shifts || shifts->size() != r) return {Tri::False, std::nullopt, "Hilbert series is not that of N^r"};
  std::vector<FPModule> parts;
  for (int s : *shifts) parts.push_back(N.shifted(-s));
  if (parts.empty()) return is_isomorphic(H, detail::zero_module(H.ring()), opt);
  return is_isomorphic(H, direct_sum(parts), opt);
}

/// H isomorphic to N^r after localizing at the homogeneous maximal ideal.
inline IsoResult is_locally_isomorphic_to_power(const FPModule& H, const FPModule& N, std::size_t r,
                                                const IsoOptions& opt = {}) {
  return is_locally_isomorphic(H, power(N, r), opt);
}

}  // namespace homlab
