#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "hilbert.hpp"
#include "quotient_ring.hpp"

namespace homlab {

using Column = std::vector<Polynomial>;

/// Column-major matrix of ring elements.
struct Matrix {
  std::size_t rows = 0;
  std::vector<Column> cols;

  Matrix() = default;
  Matrix(std::size_t r, std::vector<Column> c) : rows(r), cols(std::move(c)) {}
  static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, std::vector<Column>(c, Column(r))); }

  std::size_t ncols() const { return cols.size(); }
  const Polynomial& at(std::size_t r, std::size_t c) const { return cols[c][r]; }
  bool is_zero() const {
    for (auto& c : cols)
      for (auto& e : c)
        if (!e.is_zero()) return false;
    return true;
  }
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

class ModuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Free module with a graded basis; `degrees[i]` is the degree of the i-th basis element.
struct FreeModule {
  RingPtr ring;
  std::vector<int> degrees;
  std::size_t rank() const { return degrees.size(); }
};

/// Degree of a homogeneous column in a free module with the given basis degrees;
/// nullopt for the zero column.
inline std::optional<int> column_degree(const Column& col, const std::vector<int>& degrees) {
  std::optional<int> d;
  for (std::size_t r = 0; r < col.size(); ++r) {
    const auto& e = col[r];
    if (e.is_zero()) continue;
    auto ed = e.homogeneous_degree();
    if (!ed) throw ModuleError("matrix entry in row " + std::to_string(r) + " is not homogeneous");
    int cd = *ed + degrees[r];
    if (d && *d != cd) throw ModuleError("column is not homogeneous: row " + std::to_string(r) + " has degree " +
                                         std::to_string(cd) + ", expected " + std::to_string(*d));
    d = cd;
  }
  return d;
}

inline bool column_is_zero(const Column& c) {
  return std::all_of(c.begin(), c.end(), [](const Polynomial& p) { return p.is_zero(); });
}

/// Homogeneous map between free modules; matrix is target.rank x source.rank.
struct ModuleMap {
  FreeModule source, target;
  Matrix matrix;

  void validate() const {
    if (matrix.rows != target.rank() || matrix.ncols() != source.rank())
      throw ModuleError("matrix shape does not match source and target ranks");
    for (std::size_t j = 0; j < matrix.ncols(); ++j) {
      auto d = column_degree(matrix.cols[j], target.degrees);
      if (d && *d != source.degrees[j])
        throw ModuleError("column " + std::to_string(j) + " has degree " + std::to_string(*d) +
                          " but its source basis element has degree " + std::to_string(source.degrees[j]));
    }
  }
};

namespace detail {

inline ModuleGB relation_gb(const RingPtr& ring, const std::vector<int>& degrees, const std::vector<Column>& cols) {
  ModuleOrder order(degrees);
  ModuleGB gb(ring->base(), order);
  for (std::size_t i = 0; i < degrees.size(); ++i)
    for (auto& g : ring->gb()) gb.add_generator(column_to_vec({g}, order, ring->field(), static_cast<std::uint32_t>(i)));
  for (auto& c : cols) gb.add_generator(column_to_vec(c, order, ring->field()));
  return gb;
}

inline Column normalize_column(const RingPtr& ring, const Column& c) {
  Column out;
  out.reserve(c.size());
  for (auto& e : c) out.push_back(ring->normal_form(e));
  return out;
}

}  // namespace detail

/// Finitely presented graded module: cokernel of a presentation matrix.
///
/// Immutable; derived data (relation Groebner basis, minimal presentation) is computed
/// once on first use and shared between copies.
class FPModule {
 public:
  FPModule() = default;

  /// coker(matrix) with the given generator degrees; source degrees are inferred.
  FPModule(RingPtr ring, std::vector<int> generator_degrees, const std::vector<Column>& relations)
      : ring_(std::move(ring)), degrees_(std::move(generator_degrees)), cache_(std::make_shared<Cache>()) {
    for (auto& c : relations) {
      if (c.size() != degrees_.size()) throw ModuleError("relation column has wrong length");
      Column n = detail::normalize_column(ring_, c);
      auto d = column_degree(n, degrees_);
      if (!d) continue;
      relations_.push_back(std::move(n));
      relation_degrees_.push_back(*d);
    }
  }

  static FPModule free(RingPtr ring, std::vector<int> degrees) {
    return FPModule(std::move(ring), std::move(degrees), {});
  }
  /// The residue field k = R / m, generated in the given degree.
  static FPModule residue_field(const RingPtr& ring, int degree = 0) {
    std::vector<Column> rel;
    for (int v = 0; v < ring->nvars(); ++v) rel.push_back({Polynomial::monomial(ring->base().var(v))});
    return FPModule(ring, {degree}, rel);
  }
  /// R / (gens), generated in degree 0.
  static FPModule quotient(const RingPtr& ring, const std::vector<Polynomial>& gens) {
    std::vector<Column> rel;
    for (auto& g : gens) rel.push_back({g});
    return FPModule(ring, {0}, rel);
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<int>& generator_degrees() const { return degrees_; }
  std::size_t num_generators() const { return degrees_.size(); }
  const std::vector<Column>& relations() const { return relations_; }
  const std::vector<int>& relation_degrees() const { return relation_degrees_; }

  ModuleMap presentation() const {
    return ModuleMap{FreeModule{ring_, relation_degrees_}, FreeModule{ring_, degrees_},
                     Matrix(degrees_.size(), relations_)};
  }

  /// Groebner basis (over the ambient ring) of relations + I * free module.
  const ModuleGB& relation_gb() const {
    std::call_once(cache_->gb_once, [&] {
      cache_->gb = std::make_unique<ModuleGB>(detail::relation_gb(ring_, degrees_, relations_));
      cache_->gb->complete();
    });
    return *cache_->gb;
  }

  MonomialModule leading_data() const {
    const auto& gb = relation_gb();
    MonomialModule mm{ring_->weights(), degrees_, std::vector<std::vector<Monomial>>(degrees_.size())};
    for (auto& v : gb.basis()) mm.leading[v.front().pos].push_back(v.front().mono);
    return mm;
  }

  std::int64_t hilbert_function(int d) const { return leading_data().hilbert_function(d); }
  LaurentPoly hilbert_numerator() const { return leading_data().hilbert_numerator(); }
  int krull_dim() const { return leading_data().krull_dim(); }
  bool is_zero() const { return krull_dim() < 0; }
  bool finite_length() const { return krull_dim() <= 0; }
  /// k-dimension; throws for modules of positive dimension.
  std::int64_t length() const {
    auto l = leading_data().length();
    if (!l) throw ModuleError("module does not have finite length");
    return *l;
  }
  std::optional<LaurentPoly> hilbert_series_polynomial() const {
    return leading_data().hilbert_polynomial_series();
  }

  Vec to_vec(const Column& c) const { return column_to_vec(c, relation_gb().order(), ring_->field()); }
  Column to_column(const Vec& v) const { return vec_to_column(v, degrees_.size(), ring_->field()); }
  /// Normal form of an element of the free cover modulo the relations.
  Column reduce(const Column& c) const { return to_column(relation_gb().reduce(to_vec(c))); }
  bool element_is_zero(const Column& c) const { return relation_gb().reduces_to_zero(to_vec(c)); }

  /// M(s): the same module with every degree lowered by s.
  FPModule shifted(int s) const {
    std::vector<int> d = degrees_;
    for (auto& x : d) x -= s;
    return FPModule(ring_, d, relations_);
  }

  /// Same module over a ring with more relations (entries re-reduced).
  FPModule base_changed(const RingPtr& target) const { return FPModule(target, degrees_, relations_); }

 private:
  struct Cache {
    std::once_flag gb_once;
    std::unique_ptr<ModuleGB> gb;
  };

  RingPtr ring_;
  std::vector<int> degrees_;
  std::vector<Column> relations_;
  std::vector<int> relation_degrees_;
  std::shared_ptr<Cache> cache_;
};

// ---------------------------------------------------------------------------------------
// Submodule primitives over R = S / I.

/// Greedy minimal generating set, by degree, of (span(cols) + span(base)) / span(base)
/// inside R^n. Returns indices into `cols`.
inline std::vector<std::size_t> minimal_generator_indices(const RingPtr& ring, const std::vector<int>& degrees,
                                                          const std::vector<Column>& cols,
                                                          const std::vector<Column>& base = {}) {
  ModuleGB gb = detail::relation_gb(ring, degrees, base);
  const auto& order = gb.order();
  std::vector<std::pair<int, std::size_t>> by_degree;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto d = column_degree(cols[j], degrees);
    if (d) by_degree.emplace_back(*d, j);
  }
  std::stable_sort(by_degree.begin(), by_degree.end());
  std::vector<std::size_t> keep;
  for (auto [d, j] : by_degree) {
    gb.complete_up_to(d);
    Vec r = gb.reduce(column_to_vec(cols[j], order, ring->field()));
    if (r.empty()) continue;
    keep.push_back(j);
    gb.insert_reduced(std::move(r));
  }
  return keep;
}

/// Generators of the kernel of R^m -> R^n given by `cols` (m columns of length n).
/// Result columns have length m; they are homogeneous w.r.t. `col_degrees` and minimal.
inline std::vector<Column> syzygy_columns(const RingPtr& ring, const std::vector<int>& target_degrees,
                                          const std::vector<Column>& cols, const std::vector<int>& col_degrees) {
  const std::size_t n = target_degrees.size(), m = cols.size();
  if (m == 0) return {};
  std::vector<int> all = target_degrees;
  all.insert(all.end(), col_degrees.begin(), col_degrees.end());
  ModuleOrder order(all, static_cast<int>(n));
  ModuleGB gb(ring->base(), order);
  const auto& F = ring->field();
  for (std::size_t i = 0; i < n; ++i)
    for (auto& g : ring->gb()) gb.add_generator(column_to_vec({g}, order, F, static_cast<std::uint32_t>(i)));
  for (std::size_t j = 0; j < m; ++j) {
    Vec v = column_to_vec(cols[j], order, F);
    v.push_back(VTerm{Monomial{}, static_cast<std::uint32_t>(n + j), 1});
    gb.add_generator(vec_sort(std::move(v), order, F));
  }
  gb.complete();
  std::vector<Column> out;
  for (auto& v : gb.reduced_basis()) {
    if (v.front().pos < n) continue;
    Column c = detail::normalize_column(ring, vec_to_column(v, m, F, static_cast<std::uint32_t>(n)));
    if (!column_is_zero(c)) out.push_back(std::move(c));
  }
  std::vector<Column> minimal;
  for (auto j : minimal_generator_indices(ring, col_degrees, out)) minimal.push_back(out[j]);
  return minimal;
}

/// Map of free modules whose image is the kernel of `map` (minimal generators).
inline ModuleMap syzygy(const ModuleMap& map) {
  const RingPtr& ring = map.source.ring;
  auto cols = syzygy_columns(ring, map.target.degrees, map.matrix.cols, map.source.degrees);
  std::vector<int> deg;
  for (auto& c : cols) deg.push_back(*column_degree(c, map.source.degrees));
  return ModuleMap{FreeModule{ring, deg}, map.source, Matrix(map.source.rank(), cols)};
}

/// Result of presenting (span(gens) + base) / base as a module.
struct Subquotient {
  FPModule module;
  /// The chosen generators as columns of the ambient free module.
  std::vector<Column> generators;
};

inline Subquotient subquotient(const RingPtr& ring, const std::vector<int>& ambient_degrees,
                               const std::vector<Column>& gens, const std::vector<Column>& base) {
  std::vector<Column> keep;
  std::vector<int> keep_deg;
  for (auto j : minimal_generator_indices(ring, ambient_degrees, gens, base)) {
    keep.push_back(gens[j]);
    keep_deg.push_back(*column_degree(gens[j], ambient_degrees));
  }
  std::vector<Column> all = keep;
  std::vector<int> all_deg = keep_deg;
  for (auto& b : base) {
    auto d = column_degree(b, ambient_degrees);
    if (!d) continue;
    all.push_back(b);
    all_deg.push_back(*d);
  }
  std::vector<Column> rel;
  for (auto& s : syzygy_columns(ring, ambient_degrees, all, all_deg)) {
    Column c(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(keep.size()));
    if (!column_is_zero(c)) rel.push_back(std::move(c));
  }
  std::vector<Column> min_rel;
  for (auto j : minimal_generator_indices(ring, keep_deg, rel)) min_rel.push_back(rel[j]);
  return Subquotient{FPModule(ring, keep_deg, min_rel), keep};
}

// ---------------------------------------------------------------------------------------
// Minimal presentations.

struct MinimalPresentation {
  FPModule module;
  /// Column i expresses the i-th original generator in the new generators.
  std::vector<Column> old_generators;
};

/// Removes unit entries by elimination, then picks a minimal set of relations.
inline MinimalPresentation minimal_presentation_with_map(const FPModule& M) {
  const RingPtr& ring = M.ring();
  const auto& F = ring->field();
  std::vector<int> deg = M.generator_degrees();
  std::vector<Column> cols = M.relations();
  const std::size_t n0 = deg.size();
  std::vector<Column> images(n0, Column(n0));
  for (std::size_t i = 0; i < n0; ++i) images[i][i] = Polynomial::constant(1);

  while (true) {
    std::size_t pr = 0, pc = 0;
    bool found = false;
    for (std::size_t c = 0; c < cols.size() && !found; ++c)
      for (std::size_t r = 0; r < deg.size() && !found; ++r)
        if (cols[c][r].is_unit_constant()) {
          pr = r;
          pc = c;
          found = true;
        }
    if (!found) break;
    Coeff inv = F.inv(cols[pc][pr].leading().coeff);
    const Column pivot = cols[pc];
    auto eliminate = [&](Column& v) {
      // v <- v - (v[pr] / c) * pivot, then drop row pr.
      Polynomial factor = scale(v[pr], F.neg(inv), F);
      if (!factor.is_zero())
        for (std::size_t r = 0; r < v.size(); ++r)
          v[r] = ring->normal_form(add(v[r], mul(factor, pivot[r], F), F));
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(pr));
    };
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(pc));
    for (auto& c : cols) eliminate(c);
    for (auto& img : images) eliminate(img);
    deg.erase(deg.begin() + static_cast<std::ptrdiff_t>(pr));
    std::erase_if(cols, column_is_zero);
  }
  std::vector<Column> min_rel;
  for (auto j : minimal_generator_indices(ring, deg, cols)) min_rel.push_back(cols[j]);
  return MinimalPresentation{FPModule(ring, deg, min_rel), images};
}

inline FPModule minimal_presentation(const FPModule& M) { return minimal_presentation_with_map(M).module; }

/// Minimal number of generators.
inline std::size_t mu(const FPModule& M) { return minimal_presentation(M).num_generators(); }

inline bool is_free(const FPModule& M) { return minimal_presentation(M).relations().empty(); }

inline bool is_minimal_presentation(const FPModule& M) {
  for (auto& c : M.relations())
    for (auto& e : c)
      if (e.is_unit_constant()) return false;
  return minimal_generator_indices(M.ring(), M.generator_degrees(), M.relations()).size() == M.relations().size();
}

// ---------------------------------------------------------------------------------------
// Free resolutions.

/// F_L -> ... -> F_1 -> F_0 (-> M). maps[i] : F_{i+1} -> F_i.
struct Resolution {
  RingPtr ring;
  std::vector<std::vector<int>> degrees;  // degrees[i] = basis degrees of F_i
  std::vector<Matrix> maps;
  bool minimal = true;

  std::size_t length() const { return maps.size(); }
  std::size_t rank(std::size_t i) const { return i < degrees.size() ? degrees[i].size() : 0; }
  std::vector<std::size_t> betti() const {
    std::vector<std::size_t> b;
    for (auto& d : degrees) b.push_back(d.size());
    return b;
  }
  ModuleMap map(std::size_t i) const {
    return ModuleMap{FreeModule{ring, degrees[i + 1]}, FreeModule{ring, degrees[i]}, maps[i]};
  }
};

/// Minimal free resolution up to homological degree `length` (F_0 .. F_length).
inline Resolution resolution(const FPModule& M, std::size_t length) {
  FPModule min = minimal_presentation(M);
  Resolution res;
  res.ring = M.ring();
  res.degrees.push_back(min.generator_degrees());
  if (length == 0) return res;
  res.degrees.push_back(min.relation_degrees());
  res.maps.push_back(Matrix(min.num_generators(), min.relations()));
  while (res.maps.size() < length) {
    ModuleMap next = syzygy(res.map(res.maps.size() - 1));
    res.degrees.push_back(next.source.degrees);
    res.maps.push_back(next.matrix);
  }
  return res;
}

// ---------------------------------------------------------------------------------------
// Maps between finitely presented modules, given on generators.

/// Throws if `phi` (columns = images of X's generators in Y's cover) does not induce a
/// homogeneous map X -> Y.
inline void check_map(const FPModule& X, const FPModule& Y, const Matrix& phi) {
  if (phi.rows != Y.num_generators() || phi.ncols() != X.num_generators())
    throw ModuleError("map matrix has shape " + std::to_string(phi.rows) + "x" + std::to_string(phi.ncols()) +
                      ", expected " + std::to_string(Y.num_generators()) + "x" + std::to_string(X.num_generators()));
  for (std::size_t j = 0; j < phi.ncols(); ++j) {
    auto d = column_degree(phi.cols[j], Y.generator_degrees());
    if (d && *d != X.generator_degrees()[j])
      throw ModuleError("map column " + std::to_string(j) + " is not of degree 0");
  }
  const auto& F = X.ring()->field();
  for (std::size_t c = 0; c < X.relations().size(); ++c) {
    Column img(Y.num_generators());
    const Column& rel = X.relations()[c];
    for (std::size_t j = 0; j < rel.size(); ++j)
      if (!rel[j].is_zero())
        for (std::size_t r = 0; r < img.size(); ++r) img[r] = add(img[r], mul(rel[j], phi.cols[j][r], F), F);
    if (!Y.element_is_zero(img))
      throw ModuleError("matrix does not induce a map on cokernels: relation column " + std::to_string(c) +
                        " is not sent into the relations of the target");
  }
}

/// Applies phi (X's cover -> Y's cover) to an element of X's cover.
inline Column apply_matrix(const RingPtr& ring, const Matrix& phi, const Column& v) {
  const auto& F = ring->field();
  Column out(phi.rows);
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!v[j].is_zero())
      for (std::size_t r = 0; r < phi.rows; ++r)
        if (!phi.cols[j][r].is_zero()) out[r] = add(out[r], mul(v[j], phi.cols[j][r], F), F);
  return detail::normalize_column(ring, out);
}

/// Columns of X's cover generating the preimage of im(P_Y) under phi.
inline std::vector<Column> preimage_generators(const FPModule& X, const FPModule& Y, const Matrix& phi) {
  std::vector<Column> cols = phi.cols;
  std::vector<int> deg = X.generator_degrees();
  for (std::size_t j = 0; j < Y.relations().size(); ++j) {
    cols.push_back(Y.relations()[j]);
    deg.push_back(Y.relation_degrees()[j]);
  }
  std::vector<Column> out;
  const std::size_t m = X.num_generators();
  // Zero columns of phi contribute unit vectors directly.
  for (auto& s : syzygy_columns(X.ring(), Y.generator_degrees(), cols, deg)) {
    Column c(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(m));
    if (!column_is_zero(c)) out.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (column_is_zero(phi.cols[j])) {
      Column e(m);
      e[j] = Polynomial::constant(1);
      out.push_back(std::move(e));
    }
  }
  return out;
}

inline Subquotient kernel_of_map(const FPModule& X, const FPModule& Y, const Matrix& phi) {
  check_map(X, Y, phi);
  return subquotient(X.ring(), X.generator_degrees(), preimage_generators(X, Y, phi), X.relations());
}

inline Subquotient image_of_map(const FPModule& X, const FPModule& Y, const Matrix& phi) {
  check_map(X, Y, phi);
  return subquotient(X.ring(), Y.generator_degrees(), phi.cols, Y.relations());
}

inline FPModule cokernel_of_map(const FPModule& X, const FPModule& Y, const Matrix& phi) {
  check_map(X, Y, phi);
  std::vector<Column> rel = Y.relations();
  rel.insert(rel.end(), phi.cols.begin(), phi.cols.end());
  return minimal_presentation(FPModule(Y.ring(), Y.generator_degrees(), rel));
}

inline Matrix identity_matrix(std::size_t n) {
  Matrix m = Matrix::zero(n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols[i][i] = Polynomial::constant(1);
  return m;
}

/// Multiplication by a homogeneous f of degree e, as the map M -> M(e).
inline Matrix scalar_matrix(std::size_t n, const Polynomial& f) {
  Matrix m = Matrix::zero(n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols[i][i] = f;
  return m;
}

// ---------------------------------------------------------------------------------------
// Constructions.

inline FPModule direct_sum(const std::vector<FPModule>& parts) {
  if (parts.empty()) throw ModuleError("direct sum of no modules");
  const RingPtr& ring = parts.front().ring();
  std::vector<int> deg;
  for (auto& p : parts) deg.insert(deg.end(), p.generator_degrees().begin(), p.generator_degrees().end());
  std::vector<Column> rel;
  std::size_t offset = 0;
  for (auto& p : parts) {
    for (auto& c : p.relations()) {
      Column big(deg.size());
      for (std::size_t r = 0; r < c.size(); ++r) big[offset + r] = c[r];
      rel.push_back(std::move(big));
    }
    offset += p.num_generators();
  }
  return FPModule(ring, deg, rel);
}

inline FPModule direct_sum(const FPModule& a, const FPModule& b) { return direct_sum(std::vector<FPModule>{a, b}); }

inline FPModule power(const FPModule& M, std::size_t r) {
  if (r == 0) return FPModule::free(M.ring(), {});
  return direct_sum(std::vector<FPModule>(r, M));
}

/// Submodule of R^n generated by the given columns, as an abstract module.
inline Subquotient submodule(const RingPtr& ring, const std::vector<int>& ambient_degrees,
                             const std::vector<Column>& gens) {
  return subquotient(ring, ambient_degrees, gens, {});
}

/// The ideal (gens) as a module.
inline FPModule ideal_module(const RingPtr& ring, const std::vector<Polynomial>& gens) {
  std::vector<Column> cols;
  for (auto& g : gens) cols.push_back({ring->normal_form(g)});
  return submodule(ring, {0}, cols).module;
}

/// The graded maximal ideal as a module.
inline FPModule maximal_ideal(const RingPtr& ring) {
  std::vector<Polynomial> vars;
  for (int v = 0; v < ring->nvars(); ++v) vars.push_back(Polynomial::monomial(ring->base().var(v)));
  return ideal_module(ring, vars);
}

/// First syzygy of M together with its embedding into M's minimal free cover.
inline Subquotient first_syzygy(const FPModule& M) {
  FPModule min = minimal_presentation(M);
  return submodule(M.ring(), min.generator_degrees(), min.relations());
}

/// n-th syzygy module (minimal).
inline FPModule syzygy_module(const FPModule& M, std::size_t n) {
  FPModule cur = minimal_presentation(M);
  for (std::size_t i = 0; i < n; ++i) cur = first_syzygy(cur).module;
  return cur;
}

inline bool same_hilbert_series(const FPModule& A, const FPModule& B) {
  return A.hilbert_numerator() == B.hilbert_numerator();
}

inline std::string format_matrix(const Matrix& m, const PolyRing& ring) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows; ++r) {
    if (r) s += ", ";
    s += "[";
    for (std::size_t c = 0; c < m.ncols(); ++c) {
      if (c) s += ", ";
      s += format_polynomial(m.cols[c][r], ring);
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace homlab
