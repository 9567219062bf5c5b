#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "homlab/poly_parser.hpp"
#include "homlab/quotient_ring.hpp"

namespace homlab::testing {

inline RingPtr ring(std::uint32_t p, std::vector<std::string> vars, std::vector<int> weights,
                    std::initializer_list<const char*> ideal) {
  PolyRing base(p, weights, vars);
  std::vector<Polynomial> gens;
  for (const char* g : ideal) gens.push_back(parse_polynomial(base, g));
  return std::make_shared<const QuotientRing>(base, gens);
}

/// F5[x,y]/(xy)
inline RingPtr node_ring() { return ring(5, {"x", "y"}, {1, 1}, {"x*y"}); }
/// F2[x,y]/(x^2,xy,y^2)
inline RingPtr square_zero_ring() { return ring(2, {"x", "y"}, {1, 1}, {"x^2", "x*y", "y^2"}); }
/// F3[x]/(x^3)
inline RingPtr cube_ring() { return ring(3, {"x"}, {1}, {"x^3"}); }
/// F2[x]/(x^4)
inline RingPtr quartic_ring() { return ring(2, {"x"}, {1}, {"x^4"}); }
/// F5[x,y]/(y^2-x^3), x of weight 2 and y of weight 3
inline RingPtr cusp_ring() { return ring(5, {"x", "y"}, {2, 3}, {"y^2-x^3"}); }
/// F5[x,y]
inline RingPtr plane_ring() { return ring(5, {"x", "y"}, {1, 1}, {}); }

inline Polynomial poly(const RingPtr& r, const char* text) { return parse_polynomial(r->base(), text); }

}  // namespace homlab::testing
