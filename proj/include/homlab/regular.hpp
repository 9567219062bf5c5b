#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "module.hpp"

namespace homlab {

inline constexpr int kDefaultRegularRetries = 64;

/// True iff multiplication by f is injective on M. f must have positive degree.
inline bool is_regular_element(const Polynomial& f, const FPModule& M) {
  auto d = f.homogeneous_degree();
  if (!d) throw std::invalid_argument("regular element candidate is not homogeneous");
  if (*d <= 0) throw std::invalid_argument("regular element candidate must have positive degree");
  if (M.is_zero()) return true;
  Polynomial nf = M.ring()->normal_form(f);
  if (nf.is_zero()) return false;
  // f : M -> M(deg f)
  const FPModule target = M.shifted(*d);
  auto ker = kernel_of_map(M, target, scalar_matrix(M.num_generators(), nf));
  return ker.module.num_generators() == 0;
}

/// M / fM over R / (f); refuses when f is not regular on M.
inline FPModule cut_down(const FPModule& M, const Polynomial& f) {
  if (!is_regular_element(f, M)) throw ModuleError("cut-down element is not regular on the module");
  return M.base_changed(M.ring()->with_relations({f}));
}

/// Cut down by a sequence, checking regularity at each step.
inline FPModule cut_down(const FPModule& M, const std::vector<Polynomial>& seq) {
  FPModule cur = M;
  for (auto& f : seq) cur = cut_down(cur, f);
  return cur;
}

inline int weight_lcm(const std::vector<int>& weights) {
  int w = 1;
  for (int x : weights) w = std::lcm(w, x);
  return w;
}

/// Random k-combination of all monomials of degree d.
inline Polynomial random_form(const PolyRing& base, int d, std::mt19937_64& rng) {
  std::vector<Term> terms;
  for (auto& m : monomials_of_degree(d, base.weights))
    terms.push_back(Term{m, static_cast<Coeff>(rng() % base.p())});
  return Polynomial::from_terms(std::move(terms), base.field);
}

/// Forms f_1..f_length of degree lcm(weights), each regular on every module modulo the
/// previous ones. nullopt when some step exhausts its retry budget.
inline std::optional<std::vector<Polynomial>> general_regular_sequence(const std::vector<FPModule>& mods,
                                                                       std::size_t length, std::uint64_t seed,
                                                                       int retries = kDefaultRegularRetries) {
  if (mods.empty()) throw std::invalid_argument("no modules given");
  const RingPtr& R = mods.front().ring();
  std::mt19937_64 rng(seed);
  const int w = weight_lcm(R->weights());
  std::vector<FPModule> cur = mods;
  std::vector<Polynomial> seq;
  while (seq.size() < length) {
    std::optional<Polynomial> found;
    for (int attempt = 0; attempt < retries && !found; ++attempt) {
      Polynomial f = cur.front().ring()->normal_form(random_form(R->base(), w, rng));
      if (f.is_zero()) continue;
      bool ok = true;
      for (auto& M : cur)
        if (!is_regular_element(f, M)) {
          ok = false;
          break;
        }
      if (ok) found = f;
    }
    if (!found) return std::nullopt;
    RingPtr next = cur.front().ring()->with_relations({*found});
    for (auto& M : cur) M = M.base_changed(next);
    seq.push_back(*found);
  }
  return seq;
}

}  // namespace homlab
