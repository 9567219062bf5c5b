#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>
#include <vector>

#include "module_vector.hpp"

namespace homlab {

/// Incremental, degree-truncated Buchberger completion for homogeneous submodules of a
/// free module over the ambient polynomial ring.
///
/// After complete_up_to(d) every element of the submodule of degree <= d reduces to zero
/// against basis(). Generators may be added at any time; complete() runs to the end, which
/// always terminates for homogeneous input.
class ModuleGB {
 public:
  ModuleGB(const PolyRing& ring, ModuleOrder order)
      : field_(ring.field), weights_(ring.weights), order_(std::move(order)), by_pos_(order_.rank()) {}

  const ModuleOrder& order() const { return order_; }
  const std::vector<Vec>& basis() const { return basis_; }
  int completed_degree() const { return done_; }

  void add_generator(Vec v) {
    if (v.empty()) return;
    auto d = vec_degree(v, order_);
    if (!d) throw std::invalid_argument("module generator is not homogeneous");
    if (*d <= done_) done_ = *d - 1;
    pending_.emplace(*d, std::move(v));
  }

  void complete_up_to(int limit) {
    while (true) {
      int next = INT_MAX;
      if (!pending_.empty()) next = pending_.begin()->first;
      if (!pairs_.empty()) next = std::min(next, pairs_.begin()->first);
      if (next == INT_MAX || next > limit) break;
      // Pairs first: their S-vectors are built from the current basis.
      while (!pairs_.empty() && pairs_.begin()->first == next) {
        Pair pr = pairs_.begin()->second;
        pairs_.erase(pairs_.begin());
        Vec s = s_vector(pr);
        s = reduce(std::move(s));
        if (!s.empty()) insert_reduced(std::move(s));
      }
      while (!pending_.empty() && pending_.begin()->first == next) {
        Vec g = std::move(pending_.begin()->second);
        pending_.erase(pending_.begin());
        g = reduce(std::move(g));
        if (!g.empty()) insert_reduced(std::move(g));
      }
    }
    if (pending_.empty() && pairs_.empty())
      done_ = INT_MAX;
    else
      done_ = std::max(done_, limit);
  }

  void complete() { complete_up_to(INT_MAX); }

  /// Full normal form against the current basis.
  Vec reduce(Vec f) const {
    Vec result;
    std::size_t head = 0;
    while (head < f.size()) {
      const VTerm& lt = f[head];
      const Vec* div = nullptr;
      Monomial q;
      for (std::size_t idx : by_pos_[lt.pos]) {
        const Monomial& m = basis_[idx].front().mono;
        if (divides(m, lt.mono)) {
          div = &basis_[idx];
          q = quotient(lt.mono, m);
          break;
        }
      }
      if (!div) {
        result.push_back(lt);
        ++head;
        continue;
      }
      f = vec_add_scaled(f, head, *div, field_.neg(lt.coeff), q, order_, field_);
      head = 0;
    }
    return result;
  }

  bool reduces_to_zero(const Vec& f) const { return reduce(f).empty(); }

  /// Adds an element already in normal form (nonzero, homogeneous) to the basis.
  void insert_reduced(Vec h) {
    vec_make_monic(h, field_);
    const std::size_t k = basis_.size();
    const VTerm& lt = h.front();
    const bool h_single = single_position(h);

    // Criterion B on existing pairs.
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      const Pair& pr = it->second;
      if (basis_[pr.i].front().pos == lt.pos && divides(lt.mono, pr.lcm)) {
        Monomial li = lcm(basis_[pr.i].front().mono, lt.mono, weights_);
        Monomial lj = lcm(basis_[pr.j].front().mono, lt.mono, weights_);
        if (!(li == pr.lcm) && !(lj == pr.lcm)) {
          it = pairs_.erase(it);
          continue;
        }
      }
      ++it;
    }

    struct Cand {
      std::size_t i;
      Monomial lcm;
      bool product;
      bool alive = true;
    };
    std::vector<Cand> cands;
    for (std::size_t idx : by_pos_[lt.pos]) {
      const Vec& g = basis_[idx];
      Monomial l = lcm(g.front().mono, lt.mono, weights_);
      bool prod = h_single && single_position(g) && coprime(g.front().mono, lt.mono);
      cands.push_back(Cand{idx, l, prod});
    }
    // Criterion M: drop pairs whose lcm is a proper multiple of another new pair's lcm.
    for (auto& a : cands) {
      for (auto& b : cands) {
        if (&a == &b) continue;
        if (divides(b.lcm, a.lcm) && !(b.lcm == a.lcm)) {
          a.alive = false;
          break;
        }
      }
    }
    // Criterion F plus product criterion on groups of equal lcm.
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (!cands[a].alive) continue;
      bool any_product = cands[a].product;
      for (std::size_t b = a + 1; b < cands.size(); ++b) {
        if (cands[b].alive && cands[b].lcm == cands[a].lcm) {
          any_product = any_product || cands[b].product;
          cands[b].alive = false;
        }
      }
      if (any_product) cands[a].alive = false;
    }
    for (auto& c : cands) {
      if (!c.alive) continue;
      pairs_.emplace(order_.degree(c.lcm, lt.pos), Pair{c.i, k, c.lcm});
    }

    by_pos_[lt.pos].push_back(k);
    basis_.push_back(std::move(h));
  }

  /// Interreduced copy of the basis (minimal leading terms, tails in normal form).
  std::vector<Vec> reduced_basis() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < basis_.size() && !redundant; ++j) {
        if (i == j || basis_[i].front().pos != basis_[j].front().pos) continue;
        if (divides(basis_[j].front().mono, basis_[i].front().mono) &&
            (!(basis_[j].front().mono == basis_[i].front().mono) || j < i))
          redundant = true;
      }
      if (!redundant) out.push_back(basis_[i]);
    }
    ModuleGB tmp(field_, weights_, order_);
    for (auto& v : out) tmp.raw_insert(v);
    for (auto& v : out) {
      Vec head{v.front()};
      Vec tail(v.begin() + 1, v.end());
      Vec red = tmp.reduce(std::move(tail));
      head.insert(head.end(), red.begin(), red.end());
      v = std::move(head);
    }
    std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
      return order_.compare(a.front().mono, a.front().pos, b.front().mono, b.front().pos) < 0;
    });
    return out;
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };

  ModuleGB(const PrimeField& f, std::vector<int> w, ModuleOrder o)
      : field_(f), weights_(std::move(w)), order_(std::move(o)), by_pos_(order_.rank()) {}

  void raw_insert(const Vec& v) {
    by_pos_[v.front().pos].push_back(basis_.size());
    basis_.push_back(v);
  }

  static bool single_position(const Vec& v) {
    for (auto& t : v)
      if (t.pos != v.front().pos) return false;
    return true;
  }

  Vec s_vector(const Pair& pr) const {
    const Vec& a = basis_[pr.i];
    const Vec& b = basis_[pr.j];
    Vec sa = vec_add_scaled(Vec{}, 0, a, 1, quotient(pr.lcm, a.front().mono), order_, field_);
    return vec_add_scaled(sa, 0, b, field_.neg(1), quotient(pr.lcm, b.front().mono), order_, field_);
  }

  PrimeField field_;
  std::vector<int> weights_;
  ModuleOrder order_;
  std::vector<Vec> basis_;
  std::vector<std::vector<std::size_t>> by_pos_;
  std::multimap<int, Vec> pending_;
  std::multimap<int, Pair> pairs_;
  int done_ = INT_MIN;
};

/// Reduced Groebner basis of a homogeneous ideal (weighted grevlex).
inline std::vector<Polynomial> groebner_basis(const PolyRing& ring, const std::vector<Polynomial>& gens) {
  ModuleOrder order(std::vector<int>{0});
  ModuleGB gb(ring, order);
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) throw std::invalid_argument("ideal generator is not homogeneous");
    gb.add_generator(column_to_vec({g}, order, ring.field));
  }
  gb.complete();
  std::vector<Polynomial> out;
  for (auto& v : gb.reduced_basis()) out.push_back(vec_to_column(v, 1, ring.field).front());
  return out;
}

}  // namespace homlab
