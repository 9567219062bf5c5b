#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace homlab {

/// Residue of a prime field element, always kept in [0, p).
using Coeff = std::uint32_t;

/// Arithmetic in F_p for a runtime prime 2 <= p < 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = 2) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p))
      throw std::invalid_argument("field characteristic must be a prime below 2^31, got " +
                                  std::to_string(p));
  }

  std::uint32_t characteristic() const { return p_; }

  Coeff add(Coeff a, Coeff b) const {
    Coeff s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : a + p_ - b; }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Coeff pow(Coeff a, std::uint64_t e) const {
    Coeff r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Coeff inv(Coeff a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    return pow(a, p_ - 2);
  }
  Coeff from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Coeff>(r < 0 ? r + p_ : r);
  }
  /// Symmetric representative, used for printing.
  std::int64_t to_signed(Coeff a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  std::uint32_t p_;
};

}  // namespace homlab
