#pragma once

#include <memory>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "hilbert.hpp"

namespace homlab {

/// Graded quotient k[x_1..x_n] / I by a homogeneous ideal. Immutable after construction.
class QuotientRing {
 public:
  QuotientRing(PolyRing base, std::vector<Polynomial> ideal_gens)
      : base_(std::move(base)), gens_(std::move(ideal_gens)) {
    std::vector<Polynomial> nonzero;
    for (auto& g : gens_) {
      if (g.is_zero()) continue;
      if (!g.is_homogeneous())
        throw std::invalid_argument("ideal generator " + format_polynomial(g, base_) + " is not homogeneous");
      if (g.leading().mono.degree == 0) throw std::invalid_argument("ideal contains a unit");
      nonzero.push_back(g);
    }
    gens_ = std::move(nonzero);
    gb_ = groebner_basis(base_, gens_);
    MonomialModule mm{base_.weights, {0}, {{}}};
    for (auto& g : gb_) mm.leading[0].push_back(g.leading().mono);
    leading_ = mm;
    dim_ = mm.krull_dim();
  }

  const PolyRing& base() const { return base_; }
  const PrimeField& field() const { return base_.field; }
  std::uint32_t p() const { return base_.p(); }
  int nvars() const { return base_.nvars(); }
  const std::vector<int>& weights() const { return base_.weights; }
  const std::vector<Polynomial>& ideal_gens() const { return gens_; }
  /// Reduced Groebner basis of the defining ideal.
  const std::vector<Polynomial>& gb() const { return gb_; }
  const MonomialModule& leading_data() const { return leading_; }

  int krull_dim() const { return dim_; }
  bool is_artinian() const { return dim_ == 0; }
  bool is_polynomial_ring() const { return gb_.empty(); }

  std::int64_t hilbert_function(int d) const { return leading_.hilbert_function(d); }

  Polynomial normal_form(const Polynomial& f) const {
    ModuleOrder order(std::vector<int>{0});
    Vec v = column_to_vec({f}, order, field());
    Vec r = reduce_with(v);
    return vec_to_column(r, 1, field()).front();
  }

  Polynomial multiply(const Polynomial& a, const Polynomial& b) const {
    return normal_form(mul(a, b, field()));
  }

  bool is_zero(const Polynomial& f) const { return normal_form(f).is_zero(); }

  /// Standard monomials of degree d (a k-basis of R_d).
  std::vector<Monomial> standard_monomials(int d) const {
    std::vector<Monomial> out;
    for (auto& m : monomials_of_degree(d, weights())) {
      bool in = false;
      for (auto& g : gb_)
        if (divides(g.leading().mono, m)) {
          in = true;
          break;
        }
      if (!in) out.push_back(m);
    }
    return out;
  }

  std::string describe() const {
    std::string s = "F" + std::to_string(p()) + "[";
    for (int i = 0; i < nvars(); ++i) {
      if (i) s += ", ";
      s += base_.names[i] + ":" + std::to_string(base_.weights[i]);
    }
    s += "]";
    if (!gens_.empty()) {
      s += "/(";
      for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (i) s += ", ";
        s += format_polynomial(gens_[i], base_);
      }
      s += ")";
    }
    return s;
  }

  /// The same ambient ring with extra relations.
  std::shared_ptr<const QuotientRing> with_relations(const std::vector<Polynomial>& extra) const {
    std::vector<Polynomial> g = gens_;
    g.insert(g.end(), extra.begin(), extra.end());
    return std::make_shared<const QuotientRing>(base_, std::move(g));
  }

  std::shared_ptr<const QuotientRing> ambient_polynomial_ring() const {
    return std::make_shared<const QuotientRing>(base_, std::vector<Polynomial>{});
  }

  bool same_ring(const QuotientRing& o) const { return base_ == o.base_ && gb_ == o.gb_; }

 private:
  Vec reduce_with(Vec v) const {
    // Single-position reduction by the reduced basis.
    Vec result;
    std::size_t head = 0;
    ModuleOrder order(std::vector<int>{0});
    while (head < v.size()) {
      const VTerm& lt = v[head];
      const Polynomial* div = nullptr;
      for (auto& g : gb_)
        if (divides(g.leading().mono, lt.mono)) {
          div = &g;
          break;
        }
      if (!div) {
        result.push_back(lt);
        ++head;
        continue;
      }
      Monomial q = quotient(lt.mono, div->leading().mono);
      Coeff c = field().mul(field().neg(lt.coeff), field().inv(div->leading().coeff));
      Vec dv = column_to_vec({*div}, order, field());
      v = vec_add_scaled(v, head, dv, c, q, order, field());
      head = 0;
    }
    return result;
  }

  PolyRing base_;
  std::vector<Polynomial> gens_;
  std::vector<Polynomial> gb_;
  MonomialModule leading_;
  int dim_ = 0;
};

using RingPtr = std::shared_ptr<const QuotientRing>;

inline RingPtr make_ring(std::uint32_t p, std::vector<int> weights, std::vector<Polynomial> ideal,
                         std::vector<std::string> names = {}) {
  return std::make_shared<const QuotientRing>(PolyRing(p, std::move(weights), std::move(names)), std::move(ideal));
}

}  // namespace homlab
