#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "finite.hpp"
#include "module.hpp"
#include "regular.hpp"

namespace homlab {

inline constexpr int kInfiniteDepth = INT_MAX;

/// Homogeneous ideal of R, stored by generators reduced modulo I.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)) {
    for (auto& g : gens) {
      Polynomial n = ring_->normal_form(g);
      if (!n.is_zero()) gens_.push_back(std::move(n));
    }
    std::vector<Polynomial> all = ring_->gb();
    all.insert(all.end(), gens_.begin(), gens_.end());
    gb_ = groebner_basis(ring_->base(), all);
  }
  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingPtr ring) { return Ideal(std::move(ring), {Polynomial::constant(1)}); }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  /// Reduced Groebner basis of the preimage in the ambient polynomial ring.
  const std::vector<Polynomial>& ambient_gb() const { return gb_; }

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const {
    return std::any_of(gb_.begin(), gb_.end(), [](const Polynomial& g) { return g.is_unit_constant(); });
  }
  bool contains(const Polynomial& f) const {
    if (is_unit()) return true;
    return QuotientRing(ring_->base(), gb_).normal_form(f).is_zero();
  }
  bool contains(const Ideal& o) const {
    return std::all_of(o.gens_.begin(), o.gens_.end(), [&](const Polynomial& g) { return contains(g); });
  }
  bool operator==(const Ideal& o) const { return gb_ == o.gb_; }

  /// I * N = 0.
  bool annihilates(const FPModule& N) const {
    for (auto& g : gens_)
      for (std::size_t j = 0; j < N.num_generators(); ++j) {
        Column c(N.num_generators());
        c[j] = g;
        if (!N.element_is_zero(c)) return false;
      }
    return true;
  }

  Ideal operator*(const Ideal& o) const {
    std::vector<Polynomial> p;
    for (auto& a : gens_)
      for (auto& b : o.gens_) p.push_back(mul(a, b, ring_->field()));
    return Ideal(ring_, p);
  }
  Ideal operator+(const Ideal& o) const {
    std::vector<Polynomial> p = gens_;
    p.insert(p.end(), o.gens_.begin(), o.gens_.end());
    return Ideal(ring_, p);
  }

  std::string to_string() const {
    if (is_unit()) return "(1)";
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + format_polynomial(gens_[i], ring_->base());
    return s + ")";
  }

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::vector<Polynomial> gb_;
};

// ---------------------------------------------------------------------------------------
// Hom and Ext through a free resolution of the first argument.

namespace detail {

inline FPModule zero_module(const RingPtr& R) { return FPModule::free(R, {}); }

/// Hom(F, N) for F free with basis degrees `deg`: a sum of shifted copies of N.
inline FPModule hom_free_term(const std::vector<int>& deg, const FPModule& N) {
  if (deg.empty() || N.num_generators() == 0) return zero_module(N.ring());
  std::vector<FPModule> parts;
  for (int a : deg) parts.push_back(N.shifted(a));
  return direct_sum(parts);
}

/// Matrix of Hom(A, N): Hom(F_i, N) -> Hom(F_{i+1}, N), where A : F_{i+1} -> F_i.
inline Matrix hom_dual_matrix(const Matrix& A, std::size_t rank_i, std::size_t rank_next, std::size_t q) {
  Matrix d = Matrix::zero(rank_next * q, rank_i * q);
  for (std::size_t l = 0; l < rank_i; ++l)
    for (std::size_t j = 0; j < rank_next; ++j) {
      const Polynomial& a = A.cols[j][l];
      if (a.is_zero()) continue;
      for (std::size_t k = 0; k < q; ++k) d.cols[l * q + k][j * q + k] = a;
    }
  return d;
}

}  // namespace detail

/// The complex Hom(F_., N) in homological degrees 0..L.
struct HomComplex {
  std::vector<FPModule> terms;
  std::vector<Matrix> maps;  // maps[i] : terms[i] -> terms[i+1]
};

inline HomComplex hom_complex(const Resolution& res, const FPModule& N) {
  HomComplex hc;
  const std::size_t q = N.num_generators();
  for (std::size_t i = 0; i < res.degrees.size(); ++i) hc.terms.push_back(detail::hom_free_term(res.degrees[i], N));
  for (std::size_t i = 0; i < res.maps.size(); ++i)
    hc.maps.push_back(detail::hom_dual_matrix(res.maps[i], res.rank(i), res.rank(i + 1), q));
  return hc;
}

/// H^i of a Hom complex, presented on generators inside terms[i]'s free cover.
inline Subquotient cohomology(const HomComplex& hc, std::size_t i) {
  const FPModule& X = hc.terms[i];
  const RingPtr& R = X.ring();
  if (X.num_generators() == 0) return Subquotient{detail::zero_module(R), {}};
  std::vector<Column> gens;
  if (i < hc.maps.size() && hc.terms[i + 1].num_generators() > 0) {
    gens = preimage_generators(X, hc.terms[i + 1], hc.maps[i]);
  } else {
    for (std::size_t j = 0; j < X.num_generators(); ++j) {
      Column e(X.num_generators());
      e[j] = Polynomial::constant(1);
      gens.push_back(std::move(e));
    }
  }
  std::vector<Column> base = X.relations();
  if (i > 0) base.insert(base.end(), hc.maps[i - 1].cols.begin(), hc.maps[i - 1].cols.end());
  return subquotient(R, X.generator_degrees(), gens, base);
}

namespace detail {

inline std::mutex& resolution_cache_mutex() {
  static std::mutex m;
  return m;
}

struct CachedResolution {
  std::weak_ptr<const QuotientRing> ring;
  Resolution res;
};

inline std::vector<CachedResolution>& residue_cache() {
  static std::vector<CachedResolution> cache;
  return cache;
}

}  // namespace detail

/// Minimal resolution of k = R/m to the given length; memoized per ring object.
inline Resolution residue_resolution(const RingPtr& R, std::size_t length) {
  {
    std::lock_guard lock(detail::resolution_cache_mutex());
    auto& cache = detail::residue_cache();
    std::erase_if(cache, [](const detail::CachedResolution& c) { return c.ring.expired(); });
    for (auto& c : cache)
      if (c.ring.lock() == R && c.res.length() >= length) {
        Resolution r = c.res;
        r.ring = R;
        r.degrees.resize(length + 1);
        r.maps.resize(length);
        return r;
      }
  }
  Resolution res = resolution(FPModule::residue_field(R), length);
  std::lock_guard lock(detail::resolution_cache_mutex());
  // The cached copy must not keep the ring alive.
  detail::residue_cache().push_back({R, res});
  detail::residue_cache().back().res.ring.reset();
  return res;
}

/// Hom_R(M, N) with generators given as maps on the minimal generators of M.
struct HomModule {
  FPModule module;
  /// Column g, block l: image of the l-th minimal generator of M in N's cover.
  std::vector<Column> generators;
  FPModule source;  // minimal presentation of M
  FPModule target;  // N as used
};

inline HomModule hom(const FPModule& M, const FPModule& N) {
  FPModule Mmin = minimal_presentation(M);
  FPModule Nmin = minimal_presentation(N);
  Resolution res;
  res.ring = M.ring();
  res.degrees = {Mmin.generator_degrees(), Mmin.relation_degrees()};
  res.maps = {Matrix(Mmin.num_generators(), Mmin.relations())};
  auto hc = hom_complex(res, Nmin);
  auto sq = cohomology(hc, 0);
  return HomModule{sq.module, sq.generators, Mmin, Nmin};
}

inline FPModule hom_module(const FPModule& M, const FPModule& N) { return hom(M, N).module; }

inline FPModule ext_module(const FPModule& M, const FPModule& N, std::size_t i) {
  if (i == 0) return hom_module(M, N);
  auto res = resolution(M, i + 1);
  if (res.rank(i) == 0) return detail::zero_module(M.ring());
  return cohomology(hom_complex(res, minimal_presentation(N)), i).module;
}

/// Ext^0..Ext^top from a single resolution.
inline std::vector<FPModule> ext_modules(const FPModule& M, const FPModule& N, std::size_t top) {
  auto res = resolution(M, top + 1);
  auto hc = hom_complex(res, minimal_presentation(N));
  std::vector<FPModule> out;
  for (std::size_t i = 0; i <= top; ++i)
    out.push_back(res.rank(i) == 0 ? detail::zero_module(M.ring()) : cohomology(hc, i).module);
  return out;
}

/// k-dimensions of Ext^0..Ext^top; requires finite-length values.
inline std::vector<std::int64_t> ext_dims(const FPModule& M, const FPModule& N, std::size_t top) {
  std::vector<std::int64_t> out;
  for (auto& e : ext_modules(M, N, top)) out.push_back(e.length());
  return out;
}

inline bool ext_vanishes(const FPModule& M, const FPModule& N, std::size_t from, std::size_t to) {
  if (to < from) return true;
  auto exts = ext_modules(M, N, to);
  for (std::size_t i = from; i <= to; ++i)
    if (!exts[i].is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------------------
// Tensor, duals, transpose.

inline FPModule tensor_module(const FPModule& M, const FPModule& N) {
  FPModule A = minimal_presentation(M), B = minimal_presentation(N);
  const std::size_t n = A.num_generators(), q = B.num_generators();
  const RingPtr& R = M.ring();
  if (n == 0 || q == 0) return detail::zero_module(R);
  std::vector<int> deg;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < q; ++k) deg.push_back(A.generator_degrees()[i] + B.generator_degrees()[k]);
  std::vector<Column> rel;
  for (auto& a : A.relations())
    for (std::size_t k = 0; k < q; ++k) {
      Column c(n * q);
      for (std::size_t i = 0; i < n; ++i) c[i * q + k] = a[i];
      rel.push_back(std::move(c));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (auto& b : B.relations()) {
      Column c(n * q);
      for (std::size_t k = 0; k < q; ++k) c[i * q + k] = b[k];
      rel.push_back(std::move(c));
    }
  return minimal_presentation(FPModule(R, deg, rel));
}

/// M* = Hom(M, R).
inline FPModule dual(const FPModule& M) { return hom_module(M, FPModule::free(M.ring(), {0})); }

/// Auslander transpose: cokernel of the transposed minimal presentation matrix.
inline FPModule transpose(const FPModule& M) {
  FPModule A = minimal_presentation(M);
  const std::size_t n = A.num_generators(), m = A.relations().size();
  std::vector<int> deg;
  for (int b : A.relation_degrees()) deg.push_back(-b);
  std::vector<Column> rel;
  for (std::size_t i = 0; i < n; ++i) {
    Column c(m);
    for (std::size_t j = 0; j < m; ++j) c[j] = A.relations()[j][i];
    rel.push_back(std::move(c));
  }
  return minimal_presentation(FPModule(M.ring(), deg, rel));
}

// ---------------------------------------------------------------------------------------
// Ideals attached to a module.

namespace detail {

inline Polynomial determinant(const RingPtr& R, std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(1);
  if (n == 1) return m[0][0];
  const auto& F = R->field();
  Polynomial det;
  for (std::size_t r = 0; r < n; ++r) {
    if (m[r][0].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r) continue;
      minor.emplace_back(m[i].begin() + 1, m[i].end());
    }
    Polynomial term = R->normal_form(mul(m[r][0], determinant(R, std::move(minor)), F));
    det = (r % 2 == 0) ? add(det, term, F) : sub(det, term, F);
  }
  return det;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// Ideal of s x s minors of a matrix.
inline Ideal minors_ideal(const RingPtr& R, const std::vector<Column>& cols, std::size_t rows, std::size_t s) {
  if (s == 0) return Ideal::unit(R);
  if (s > rows || s > cols.size()) return Ideal::zero(R);
  std::vector<std::vector<std::size_t>> rs, cs;
  detail::subsets(rows, s, rs);
  detail::subsets(cols.size(), s, cs);
  std::vector<Polynomial> gens;
  for (auto& r : rs)
    for (auto& c : cs) {
      std::vector<std::vector<Polynomial>> m(s, std::vector<Polynomial>(s));
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) m[i][j] = cols[c[j]][r[i]];
      Polynomial d = R->normal_form(detail::determinant(R, std::move(m)));
      if (!d.is_zero()) gens.push_back(std::move(d));
    }
  return Ideal(R, gens);
}

/// I_j(M): ideal of (n - j)-minors of the minimal presentation, n = mu(M).
inline Ideal fitting_ideal(const FPModule& M, int j) {
  const RingPtr& R = M.ring();
  if (j < 0) return Ideal::zero(R);
  FPModule A = minimal_presentation(M);
  const int n = static_cast<int>(A.num_generators());
  if (n - j <= 0) return Ideal::unit(R);
  return minors_ideal(R, A.relations(), A.num_generators(), static_cast<std::size_t>(n - j));
}

inline Ideal annihilator(const FPModule& M) {
  const RingPtr& R = M.ring();
  FPModule A = minimal_presentation(M);
  const std::size_t n = A.num_generators();
  if (n == 0) return Ideal::unit(R);
  std::vector<FPModule> parts;
  for (int a : A.generator_degrees()) parts.push_back(A.shifted(a));
  FPModule Y = direct_sum(parts);
  Column image(n * n);
  for (std::size_t i = 0; i < n; ++i) image[i * n + i] = Polynomial::constant(1);
  FPModule X = FPModule::free(R, {0});
  std::vector<Polynomial> gens;
  for (auto& c : preimage_generators(X, Y, Matrix(n * n, {image}))) gens.push_back(c[0]);
  return Ideal(R, gens);
}

/// Soc(M) = 0 :_M m, as the kernel of M -> sum_v M(w_v).
inline Subquotient socle_with_embedding(const FPModule& M) {
  const RingPtr& R = M.ring();
  FPModule A = minimal_presentation(M);
  const std::size_t n = A.num_generators();
  if (n == 0) return Subquotient{detail::zero_module(R), {}};
  std::vector<FPModule> parts;
  for (int w : R->weights()) parts.push_back(A.shifted(w));
  FPModule Y = direct_sum(parts);
  Matrix phi = Matrix::zero(n * parts.size(), n);
  for (std::size_t v = 0; v < parts.size(); ++v) {
    Polynomial xv = Polynomial::monomial(R->base().var(static_cast<int>(v)));
    for (std::size_t j = 0; j < n; ++j) phi.cols[j][v * n + j] = xv;
  }
  return subquotient(R, A.generator_degrees(), preimage_generators(A, Y, phi), A.relations());
}

inline FPModule socle(const FPModule& M) { return socle_with_embedding(M).module; }

inline std::int64_t socle_dim(const FPModule& M) { return socle(M).length(); }

struct FreeSummandWitness {
  Column map;            // f on the minimal generators of M
  std::size_t generator; // index m with f(m) a unit
};

struct TraceResult {
  Ideal trace;
  std::optional<FreeSummandWitness> witness;
};

/// Trace ideal: generated by all f(m) for f in Hom(M, R) and m in M.
inline TraceResult trace_ideal(const FPModule& M) {
  const RingPtr& R = M.ring();
  auto H = hom(M, FPModule::free(R, {0}));
  std::vector<Polynomial> gens;
  std::optional<FreeSummandWitness> witness;
  for (auto& g : H.generators)
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i].is_zero()) continue;
      gens.push_back(g[i]);
      if (!witness && g[i].is_unit_constant()) witness = FreeSummandWitness{g, i};
    }
  return TraceResult{Ideal(R, gens), witness};
}

inline bool has_free_summand(const FPModule& M) { return trace_ideal(M).witness.has_value(); }

// ---------------------------------------------------------------------------------------
// Depth, Bass numbers, type.

/// nu_0..nu_top with nu_i = dim_k Ext^i(k, M).
inline std::vector<std::int64_t> nu_numbers(const FPModule& M, std::size_t top) {
  auto res = residue_resolution(M.ring(), top + 1);
  auto hc = hom_complex(res, minimal_presentation(M));
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i <= top; ++i) out.push_back(cohomology(hc, i).module.length());
  return out;
}

inline std::int64_t nu(std::size_t i, const FPModule& M) { return nu_numbers(M, i).back(); }

struct DepthInfo {
  int depth = kInfiniteDepth;
  std::int64_t type = 0;
};

/// depth = least i with nu_i != 0 (at most dim M); type = nu_depth.
inline DepthInfo depth_and_type(const FPModule& M) {
  if (M.is_zero()) return {};
  const int dim = M.krull_dim();
  auto res = residue_resolution(M.ring(), static_cast<std::size_t>(dim) + 1);
  auto hc = hom_complex(res, minimal_presentation(M));
  for (int i = 0; i <= dim; ++i) {
    std::int64_t v = cohomology(hc, static_cast<std::size_t>(i)).module.length();
    if (v != 0) return DepthInfo{i, v};
  }
  throw ModuleError("no nonvanishing Bass number up to the dimension");
}

inline int depth(const FPModule& M) { return depth_and_type(M).depth; }
inline std::int64_t type(const FPModule& M) { return depth_and_type(M).type; }
inline int depth(const RingPtr& R) { return depth(FPModule::free(R, {0})); }

inline bool is_cohen_macaulay(const FPModule& M) { return M.is_zero() || depth(M) == M.krull_dim(); }
inline bool is_maximal_cohen_macaulay(const FPModule& M) {
  return M.is_zero() || depth(M) == M.ring()->krull_dim();
}

/// Length of M / (seq) M for a full regular sequence.
inline std::int64_t multiplicity(const FPModule& M, const std::vector<Polynomial>& seq) {
  if (static_cast<int>(seq.size()) != M.ring()->krull_dim())
    throw ModuleError("multiplicity needs a sequence of length dim R");
  return cut_down(M, seq).length();
}

// ---------------------------------------------------------------------------------------
// Matlis dual and canonical module.

inline FPModule matlis_dual(const FPModule& M) {
  if (!M.finite_length()) throw ModuleError("Matlis dual needs a finite-length module");
  return present(M.ring(), graded_dual(realize(M)));
}

inline FPModule normalize_shift(const FPModule& M) {
  FPModule m = minimal_presentation(M);
  if (m.num_generators() == 0) return m;
  int lo = *std::min_element(m.generator_degrees().begin(), m.generator_degrees().end());
  return m.shifted(lo);
}

/// omega_R = Ext^{n-d}_S(R, S) over the ambient polynomial ring, viewed over R.
inline FPModule canonical_module(const RingPtr& R) {
  const int d = R->krull_dim();
  if (depth(R) != d) throw ModuleError("canonical module requires a Cohen-Macaulay ring");
  RingPtr S = R->ambient_polynomial_ring();
  const std::size_t c = static_cast<std::size_t>(R->nvars() - d);
  FPModule RS = FPModule::quotient(S, R->ideal_gens());
  FPModule E = ext_module(RS, FPModule::free(S, {0}), c);
  return normalize_shift(E.base_changed(R));
}

struct GorensteinReport {
  bool gorenstein = false;
  std::size_t canonical_mu = 0;
  std::int64_t type = 0;
  bool consistent = false;
};

inline GorensteinReport gorenstein_test(const RingPtr& R) {
  GorensteinReport g;
  g.canonical_mu = mu(canonical_module(R));
  g.type = type(FPModule::free(R, {0}));
  g.gorenstein = g.canonical_mu == 1;
  g.consistent = g.gorenstein == (g.type == 1);
  return g;
}

}  // namespace homlab
