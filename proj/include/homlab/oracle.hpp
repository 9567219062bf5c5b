#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "finite.hpp"
#include "linalg.hpp"
#include "module.hpp"
#include "polynomial.hpp"

// Independent finite-length engine: everything here is dense linear algebra over F_p.
// Rings are built degree by degree from Macaulay matrices; no Groebner bases are used.

namespace homlab::oracle {

/// An Artinian graded ring as a finite-dimensional algebra.
struct LinRing {
  PolyRing base{2, {1}, {}};
  std::vector<Polynomial> ideal;
  std::vector<Monomial> basis;  // monomial representatives of a k-basis
  std::vector<int> degrees;
  std::vector<DenseMatrix> mult;  // regular representation, one per variable

  struct Piece {
    std::vector<Monomial> monos;
    DenseMatrix reduced;  // rref of I_d in monomial coordinates
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> basis_index;  // for non-pivot monomials: index into basis
  };
  std::map<int, Piece> pieces;
  int top = -1;

  std::size_t dim() const { return basis.size(); }
  const PrimeField& field() const { return base.field; }
  int nvars() const { return base.nvars(); }

  /// Coordinates of a polynomial in the basis.
  std::vector<Coeff> coords(const Polynomial& f) const {
    std::vector<Coeff> out(dim(), 0);
    const auto& F = field();
    for (auto& t : f.terms()) {
      auto it = pieces.find(t.mono.degree);
      if (it == pieces.end()) continue;
      const Piece& pc = it->second;
      std::size_t col = std::find(pc.monos.begin(), pc.monos.end(), t.mono) - pc.monos.begin();
      auto pv = std::find(pc.pivots.begin(), pc.pivots.end(), col);
      if (pv == pc.pivots.end()) {
        std::size_t bi = pc.basis_index[col];
        out[bi] = F.add(out[bi], t.coeff);
        continue;
      }
      std::size_t row = static_cast<std::size_t>(pv - pc.pivots.begin());
      for (std::size_t j = 0; j < pc.monos.size(); ++j) {
        if (j == col || !pc.reduced(row, j)) continue;
        std::size_t bi = pc.basis_index[j];
        out[bi] = F.sub(out[bi], F.mul(t.coeff, pc.reduced(row, j)));
      }
    }
    return out;
  }

  Polynomial element(const std::vector<Coeff>& c) const {
    std::vector<Term> terms;
    for (std::size_t u = 0; u < dim(); ++u)
      if (c[u]) terms.push_back(Term{basis[u], c[u]});
    return Polynomial::from_terms(std::move(terms), field());
  }
};

inline LinRing lin_ring(const PolyRing& base, const std::vector<Polynomial>& ideal) {
  LinRing R;
  R.base = base;
  R.ideal = ideal;
  const auto& F = base.field;
  const int maxw = *std::max_element(base.weights.begin(), base.weights.end());
  int zero_run = 0;
  for (int d = 0; zero_run < maxw; ++d) {
    if (d > 4096) throw std::invalid_argument("ring is not Artinian");
    LinRing::Piece pc;
    pc.monos = monomials_of_degree(d, base.weights);
    std::vector<std::vector<Coeff>> rows;
    for (auto& g : ideal) {
      auto gd = g.homogeneous_degree();
      if (!gd) throw std::invalid_argument("ideal generator is not homogeneous");
      if (*gd > d) continue;
      for (auto& u : monomials_of_degree(d - *gd, base.weights)) {
        std::vector<Coeff> row(pc.monos.size(), 0);
        for (auto& t : g.terms()) {
          Monomial m = t.mono * u;
          std::size_t idx = std::find(pc.monos.begin(), pc.monos.end(), m) - pc.monos.begin();
          row[idx] = F.add(row[idx], t.coeff);
        }
        rows.push_back(std::move(row));
      }
    }
    pc.reduced = DenseMatrix(rows.size(), pc.monos.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < pc.monos.size(); ++c) pc.reduced(r, c) = rows[r][c];
    pc.pivots = rref(pc.reduced, F);
    pc.basis_index.assign(pc.monos.size(), SIZE_MAX);
    std::size_t added = 0;
    for (std::size_t c = 0; c < pc.monos.size(); ++c) {
      if (std::find(pc.pivots.begin(), pc.pivots.end(), c) != pc.pivots.end()) continue;
      pc.basis_index[c] = R.basis.size();
      R.basis.push_back(pc.monos[c]);
      R.degrees.push_back(d);
      ++added;
    }
    R.pieces.emplace(d, std::move(pc));
    if (added == 0) {
      ++zero_run;
    } else {
      zero_run = 0;
      R.top = d;
    }
  }
  for (int v = 0; v < base.nvars(); ++v) {
    DenseMatrix A(R.dim(), R.dim());
    for (std::size_t j = 0; j < R.dim(); ++j) {
      auto c = R.coords(Polynomial::monomial(R.basis[j] * base.var(v)));
      for (std::size_t i = 0; i < R.dim(); ++i) A(i, j) = c[i];
    }
    R.mult.push_back(std::move(A));
  }
  return R;
}

inline LinRing lin_ring(const QuotientRing& R) { return lin_ring(R.base(), R.ideal_gens()); }

// ---------------------------------------------------------------------------------------
// Module-level helpers.

/// Action of every basis element of the ring on M.
inline std::vector<DenseMatrix> basis_actions(const LinRing& R, const LinModule& M) {
  const auto& F = R.field();
  std::vector<DenseMatrix> U(R.dim());
  std::vector<bool> done(R.dim(), false);
  auto compute = [&](auto&& self, std::size_t u) -> const DenseMatrix& {
    if (done[u]) return U[u];
    const Monomial& m = R.basis[u];
    int v = 0;
    while (v < R.nvars() && m.exp[v] == 0) ++v;
    if (v == R.nvars()) {
      U[u] = DenseMatrix::identity(M.dim());
    } else {
      Monomial rest = quotient(m, R.base.var(v));
      // rest is a monomial of lower degree; express it through the basis.
      auto c = R.coords(Polynomial::monomial(rest));
      DenseMatrix acc(M.dim(), M.dim());
      for (std::size_t w = 0; w < R.dim(); ++w)
        if (c[w]) acc = add(acc, [&] {
          DenseMatrix s = self(self, w);
          for (std::size_t i = 0; i < s.rows(); ++i)
            for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) = F.mul(s(i, j), c[w]);
          return s;
        }(), F);
      U[u] = multiply(M.action[v], acc, F);
    }
    done[u] = true;
    return U[u];
  };
  for (std::size_t u = 0; u < R.dim(); ++u) compute(compute, u);
  return U;
}

/// Action of an arbitrary polynomial on M (products of the variable matrices).
inline DenseMatrix polynomial_action(const LinModule& M, const Polynomial& f) {
  const auto& F = M.field;
  DenseMatrix out(M.dim(), M.dim());
  for (auto& t : f.terms()) {
    DenseMatrix acc = DenseMatrix::identity(M.dim());
    for (int v = 0; v < M.nvars(); ++v)
      for (int e = 0; e < t.mono.exp[v]; ++e) acc = multiply(M.action[v], acc, F);
    for (std::size_t i = 0; i < acc.rows(); ++i)
      for (std::size_t j = 0; j < acc.cols(); ++j) out(i, j) = F.add(out(i, j), F.mul(acc(i, j), t.coeff));
  }
  return out;
}

/// Actions commute and every ideal generator acts as zero.
inline bool is_module(const LinRing& R, const LinModule& M) {
  const auto& F = M.field;
  for (int a = 0; a < M.nvars(); ++a)
    for (int b = a + 1; b < M.nvars(); ++b)
      if (!(multiply(M.action[a], M.action[b], F) == multiply(M.action[b], M.action[a], F))) return false;
  for (auto& g : R.ideal)
    if (!polynomial_action(M, g).is_zero()) return false;
  return true;
}

inline DenseMatrix stack_actions(const LinModule& M) {
  DenseMatrix S(M.dim(), M.dim() * M.action.size());
  for (std::size_t v = 0; v < M.action.size(); ++v)
    for (std::size_t i = 0; i < M.dim(); ++i)
      for (std::size_t j = 0; j < M.dim(); ++j) S(i, v * M.dim() + j) = M.action[v](i, j);
  return S;
}

/// dim M / mM.
inline std::size_t lin_mu(const LinModule& M) { return M.dim() - rank(stack_actions(M), M.field); }

inline std::size_t lin_socle_dim(const LinModule& M) {
  DenseMatrix S(M.dim() * M.action.size(), M.dim());
  for (std::size_t v = 0; v < M.action.size(); ++v)
    for (std::size_t i = 0; i < M.dim(); ++i)
      for (std::size_t j = 0; j < M.dim(); ++j) S(v * M.dim() + i, j) = M.action[v](i, j);
  return M.dim() - rank(S, M.field);
}

/// dim_k of {r in R : rM = 0}.
inline std::size_t lin_annihilator_dim(const LinRing& R, const LinModule& M) {
  auto U = basis_actions(R, M);
  DenseMatrix S(M.dim() * M.dim(), R.dim());
  for (std::size_t u = 0; u < R.dim(); ++u)
    for (std::size_t i = 0; i < M.dim(); ++i)
      for (std::size_t j = 0; j < M.dim(); ++j) S(i * M.dim() + j, u) = U[u](i, j);
  return R.dim() - rank(S, M.field);
}

/// Basis of Hom_R(M, N): all matrices Phi with Phi A_v = B_v Phi.
inline std::vector<DenseMatrix> lin_hom(const LinModule& M, const LinModule& N) {
  const auto& F = M.field;
  const std::size_t m = M.dim(), n = N.dim();
  // Unknown Phi(i, j) at index i * m + j.
  DenseMatrix S(M.action.size() * n * m, n * m);
  for (std::size_t v = 0; v < M.action.size(); ++v) {
    const auto& A = M.action[v];
    const auto& B = N.action[v];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        std::size_t row = v * n * m + i * m + j;
        // (Phi A)(i, j) - (B Phi)(i, j)
        for (std::size_t k = 0; k < m; ++k)
          if (A(k, j)) S(row, i * m + k) = F.add(S(row, i * m + k), A(k, j));
        for (std::size_t k = 0; k < n; ++k)
          if (B(i, k)) S(row, k * m + j) = F.sub(S(row, k * m + j), B(i, k));
      }
  }
  DenseMatrix ns = nullspace(S, F);
  std::vector<DenseMatrix> out;
  for (std::size_t c = 0; c < ns.cols(); ++c) {
    DenseMatrix phi(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) phi(i, j) = ns(i * m + j, c);
    out.push_back(std::move(phi));
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Free resolutions by linear algebra.

/// ranks[i] = rank of F_i; kernel_gens[i][j] = image of the j-th basis element of
/// F_{i+1} in F_i, in coordinates (generator l, ring basis u) -> l * dim R + u.
struct LinResolution {
  std::vector<std::size_t> ranks;
  std::vector<std::vector<std::vector<Coeff>>> kernel_gens;
};

namespace detail {

/// Indices of basis vectors of M generating M (complement of mM).
inline std::vector<std::size_t> minimal_generators(const LinModule& M) {
  const auto& F = M.field;
  DenseMatrix S = stack_actions(M);
  std::size_t r = rank(S, F);
  std::vector<std::size_t> gens;
  std::vector<std::vector<Coeff>> cols;
  for (std::size_t c = 0; c < S.cols(); ++c) cols.push_back(S.column(c));
  for (std::size_t j = 0; j < M.dim() && r < M.dim(); ++j) {
    std::vector<Coeff> e(M.dim(), 0);
    e[j] = 1;
    cols.push_back(e);
    std::size_t nr = rank(from_columns(M.dim(), cols), F);
    if (nr > r) {
      gens.push_back(j);
      r = nr;
    } else {
      cols.pop_back();
    }
  }
  return gens;
}

}  // namespace detail

inline LinResolution lin_resolution(const LinRing& R, const LinModule& M, std::size_t length) {
  const auto& F = R.field();
  const std::size_t dR = R.dim();
  LinResolution res;
  LinModule cur = M;
  for (std::size_t step = 0;; ++step) {
    auto gens = detail::minimal_generators(cur);
    const std::size_t g = gens.size();
    res.ranks.push_back(g);
    if (step == length || g == 0) break;
    auto U = basis_actions(R, cur);
    // pi : R^g -> cur, column (l, u) = u * gen_l.
    DenseMatrix pi(cur.dim(), g * dR);
    for (std::size_t l = 0; l < g; ++l)
      for (std::size_t u = 0; u < dR; ++u)
        for (std::size_t i = 0; i < cur.dim(); ++i) pi(i, l * dR + u) = U[u](i, gens[l]);
    // Kernel with coordinates read off the free (non-pivot) rows.
    DenseMatrix red = pi;
    auto piv = rref(red, F);
    std::vector<std::size_t> free_rows;
    for (std::size_t c = 0; c < g * dR; ++c)
      if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_rows.push_back(c);
    DenseMatrix K = nullspace(pi, F);
    LinModule next{F, cur.weights, std::vector<int>(K.cols(), 0), {}};
    for (int v = 0; v < R.nvars(); ++v) {
      DenseMatrix A(K.cols(), K.cols());
      for (std::size_t c = 0; c < K.cols(); ++c) {
        // x_v acting on the free module R^g, then coordinates in K.
        std::vector<Coeff> y(g * dR, 0);
        for (std::size_t l = 0; l < g; ++l)
          for (std::size_t u = 0; u < dR; ++u) {
            Coeff a = K(l * dR + u, c);
            if (!a) continue;
            for (std::size_t w = 0; w < dR; ++w)
              if (R.mult[v](w, u)) y[l * dR + w] = F.add(y[l * dR + w], F.mul(a, R.mult[v](w, u)));
          }
        for (std::size_t k = 0; k < free_rows.size(); ++k) A(k, c) = y[free_rows[k]];
      }
      next.action.push_back(std::move(A));
    }
    auto kg = detail::minimal_generators(next);
    std::vector<std::vector<Coeff>> images;
    for (auto j : kg) images.push_back(K.column(j));
    res.kernel_gens.push_back(std::move(images));
    cur = std::move(next);
  }
  while (res.ranks.size() < length + 1) res.ranks.push_back(0);
  return res;
}

/// dim_k Ext^i_R(M, N) for i = 0..top.
inline std::vector<std::int64_t> lin_ext_dims(const LinRing& R, const LinModule& M, const LinModule& N,
                                              std::size_t top) {
  const auto& F = R.field();
  const std::size_t dR = R.dim(), dN = N.dim();
  auto res = lin_resolution(R, M, top + 1);
  auto UN = basis_actions(R, N);
  // delta^i : Hom(F_i, N) -> Hom(F_{i+1}, N), block (j, l) = sum_u k_j[l, u] U_N(u).
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i <= top; ++i) {
    const std::size_t gi = res.ranks[i], gn = res.ranks[i + 1];
    if (gi == 0 || gn == 0 || dN == 0) {
      ranks.push_back(0);
      continue;
    }
    DenseMatrix D(gn * dN, gi * dN);
    for (std::size_t j = 0; j < gn; ++j) {
      const auto& kj = res.kernel_gens[i][j];
      for (std::size_t l = 0; l < gi; ++l)
        for (std::size_t u = 0; u < dR; ++u) {
          Coeff c = kj[l * dR + u];
          if (!c) continue;
          for (std::size_t a = 0; a < dN; ++a)
            for (std::size_t b = 0; b < dN; ++b)
              if (UN[u](a, b)) D(j * dN + a, l * dN + b) = F.add(D(j * dN + a, l * dN + b), F.mul(c, UN[u](a, b)));
        }
    }
    ranks.push_back(rank(D, F));
  }
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i <= top; ++i) {
    std::int64_t d = static_cast<std::int64_t>(res.ranks[i] * dN) - static_cast<std::int64_t>(ranks[i]);
    if (i > 0) d -= static_cast<std::int64_t>(ranks[i - 1]);
    out.push_back(d);
  }
  return out;
}

inline std::int64_t lin_ext(const LinRing& R, const LinModule& M, const LinModule& N, std::size_t i) {
  return lin_ext_dims(R, M, N, i)[i];
}

// ---------------------------------------------------------------------------------------
// Constructions.

/// R as a module over itself.
inline LinModule regular_module(const LinRing& R) { return LinModule{R.field(), R.base.weights, R.degrees, R.mult}; }

inline LinModule residue_module(const LinRing& R) {
  LinModule k{R.field(), R.base.weights, {0}, {}};
  for (int v = 0; v < R.nvars(); ++v) k.action.push_back(DenseMatrix(1, 1));
  return k;
}

/// A random module R^g / U together with the same module as a cokernel for the GB engine.
struct RandomModule {
  LinModule lin;
  std::vector<int> generator_degrees;
  std::vector<Column> relations;  // in the ambient polynomial ring, homogeneous
  FPModule as_fp(const RingPtr& ring) const { return FPModule(ring, generator_degrees, relations); }
};

struct RandomModuleParams {
  std::size_t max_generators = 2;
  std::size_t max_relations = 3;
  int max_generator_degree = 1;
};

inline RandomModule random_module(const LinRing& R, std::mt19937_64& rng, const RandomModuleParams& prm = {}) {
  const auto& F = R.field();
  const std::size_t dR = R.dim();
  const std::size_t g = 1 + rng() % prm.max_generators;
  RandomModule out;
  for (std::size_t i = 0; i < g; ++i)
    out.generator_degrees.push_back(i == 0 ? 0 : static_cast<int>(rng() % (prm.max_generator_degree + 1)));
  const std::size_t n = g * dR;
  std::vector<int> deg(n);
  for (std::size_t l = 0; l < g; ++l)
    for (std::size_t u = 0; u < dR; ++u) deg[l * dR + u] = out.generator_degrees[l] + R.degrees[u];
  std::vector<int> available(deg.begin(), deg.end());
  std::sort(available.begin(), available.end());
  available.erase(std::unique(available.begin(), available.end()), available.end());
  // Free-module actions.
  std::vector<DenseMatrix> act;
  for (int v = 0; v < R.nvars(); ++v) {
    DenseMatrix A(n, n);
    for (std::size_t l = 0; l < g; ++l)
      for (std::size_t u = 0; u < dR; ++u)
        for (std::size_t w = 0; w < dR; ++w) A(l * dR + w, l * dR + u) = R.mult[v](w, u);
    act.push_back(std::move(A));
  }
  LinModule free{F, R.base.weights, deg, act};
  auto U = basis_actions(R, free);
  const std::size_t s = rng() % (prm.max_relations + 1);
  std::vector<std::vector<Coeff>> span;
  for (std::size_t r = 0; r < s; ++r) {
    int e = available[rng() % available.size()];
    std::vector<Coeff> w(n, 0);
    for (std::size_t c = 0; c < n; ++c)
      if (deg[c] == e) w[c] = static_cast<Coeff>(rng() % F.characteristic());
    Column col(g);
    for (std::size_t l = 0; l < g; ++l) {
      std::vector<Coeff> part(w.begin() + static_cast<std::ptrdiff_t>(l * dR),
                              w.begin() + static_cast<std::ptrdiff_t>((l + 1) * dR));
      col[l] = R.element(part);
    }
    out.relations.push_back(std::move(col));
    for (std::size_t u = 0; u < dR; ++u) span.push_back(apply(U[u], w, F));
  }
  // Quotient by the span: complement basis = non-pivot coordinates.
  DenseMatrix rows(span.size(), n);
  for (std::size_t r = 0; r < span.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) rows(r, c) = span[r][c];
  auto piv = rref(rows, F);
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < n; ++c)
    if (std::find(piv.begin(), piv.end(), c) == piv.end()) keep.push_back(c);
  auto project = [&](std::vector<Coeff> y) {
    for (std::size_t r = 0; r < piv.size(); ++r) {
      Coeff a = y[piv[r]];
      if (!a) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (rows(r, c)) y[c] = F.sub(y[c], F.mul(a, rows(r, c)));
    }
    std::vector<Coeff> q(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) q[k] = y[keep[k]];
    return q;
  };
  LinModule Q{F, R.base.weights, {}, {}};
  for (auto c : keep) Q.degrees.push_back(deg[c]);
  for (int v = 0; v < R.nvars(); ++v) {
    DenseMatrix A(keep.size(), keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
      auto y = project(act[v].column(keep[j]));
      for (std::size_t i = 0; i < keep.size(); ++i) A(i, j) = y[i];
    }
    Q.action.push_back(std::move(A));
  }
  out.lin = std::move(Q);
  return out;
}

// ---------------------------------------------------------------------------------------
// Enumeration of small graded modules.

struct Fingerprint {
  std::vector<std::pair<int, std::size_t>> hilbert;
  std::size_t socle = 0, annihilator = 0, mu = 0, beta1 = 0;
  auto tie() const { return std::tie(hilbert, socle, annihilator, mu, beta1); }
  bool operator<(const Fingerprint& o) const { return tie() < o.tie(); }
  bool operator==(const Fingerprint& o) const { return tie() == o.tie(); }
};

inline Fingerprint fingerprint(const LinRing& R, const LinModule& M) {
  Fingerprint f;
  for (auto& [d, n] : graded_dims(M)) f.hilbert.emplace_back(d, n);
  f.socle = lin_socle_dim(M);
  f.annihilator = lin_annihilator_dim(R, M);
  auto res = lin_resolution(R, M, 1);
  f.mu = res.ranks[0];
  f.beta1 = res.ranks[1];
  return f;
}

struct Enumeration {
  std::vector<LinModule> modules;  // one representative per fingerprint
  std::vector<Fingerprint> fingerprints;
  std::size_t raw_tuples = 0;      // valid tuples visited
  bool sampled = false;            // budget exceeded: tuples were drawn at random
};

namespace detail {

inline void degree_vectors(std::size_t n, int maxgap, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  if (cur.empty()) {
    cur.push_back(0);
    degree_vectors(n, maxgap, cur, out);
    cur.pop_back();
    return;
  }
  for (int gap = 0; gap <= maxgap; ++gap) {
    cur.push_back(cur.back() + gap);
    degree_vectors(n, maxgap, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// All graded modules of dimension 1..max_dim (basis degrees starting at 0, gaps at most
/// the largest weight), deduplicated by fingerprint. Above `budget` raw tuples per degree
/// vector, tuples are sampled with the given seed instead.
inline Enumeration enumerate_modules(const LinRing& R, std::size_t max_dim, std::uint64_t budget = 1u << 16,
                                     std::uint64_t seed = 1) {
  const auto& F = R.field();
  const std::uint64_t p = F.characteristic();
  const int maxw = *std::max_element(R.base.weights.begin(), R.base.weights.end());
  Enumeration out;
  std::set<Fingerprint> seen;
  std::mt19937_64 rng(seed);
  for (std::size_t n = 1; n <= max_dim; ++n) {
    std::vector<std::vector<int>> vecs;
    std::vector<int> cur;
    detail::degree_vectors(n, maxw, cur, vecs);
    for (auto& deg : vecs) {
      // Free entries: (v, row, col) with deg[row] = deg[col] + w_v.
      std::vector<std::tuple<int, std::size_t, std::size_t>> slots;
      for (int v = 0; v < R.nvars(); ++v)
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c)
            if (deg[r] == deg[c] + R.base.weights[v]) slots.emplace_back(v, r, c);
      double total = 1;
      for (std::size_t s = 0; s < slots.size(); ++s) total *= static_cast<double>(p);
      const bool sample = total > static_cast<double>(budget);
      if (sample) out.sampled = true;
      const std::uint64_t count = sample ? budget : static_cast<std::uint64_t>(total);
      std::vector<Coeff> vals(slots.size(), 0);
      for (std::uint64_t it = 0; it < count; ++it) {
        if (sample) {
          for (auto& x : vals) x = static_cast<Coeff>(rng() % p);
        } else {
          std::uint64_t code = it;
          for (auto& x : vals) {
            x = static_cast<Coeff>(code % p);
            code /= p;
          }
        }
        LinModule M{F, R.base.weights, deg, std::vector<DenseMatrix>(R.nvars(), DenseMatrix(n, n))};
        for (std::size_t s = 0; s < slots.size(); ++s) {
          auto [v, r, c] = slots[s];
          M.action[v](r, c) = vals[s];
        }
        if (!is_module(R, M)) continue;
        ++out.raw_tuples;
        Fingerprint fp = fingerprint(R, M);
        if (seen.insert(fp).second) {
          out.modules.push_back(M);
          out.fingerprints.push_back(fp);
        }
      }
    }
  }
  return out;
}

/// Finite-length FPModule over the GB ring from a linear module.
inline FPModule to_fp(const RingPtr& ring, const LinModule& M) { return present(ring, M); }

}  // namespace homlab::oracle
