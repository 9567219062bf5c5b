#include <gtest/gtest.h>

#include <random>

#include "homlab/homology.hpp"
#include "homlab/oracle.hpp"
#include "test_support.hpp"

using namespace homlab;
using namespace homlab::testing;
using namespace homlab::oracle;

TEST(LinRing, TruncatedPolynomialRing) {
  auto R = cube_ring();
  auto L = lin_ring(*R);
  ASSERT_EQ(L.dim(), 3u);
  EXPECT_EQ(L.degrees, (std::vector<int>{0, 1, 2}));
  DenseMatrix jordan(3, 3);
  jordan(1, 0) = 1;
  jordan(2, 1) = 1;
  EXPECT_EQ(L.mult[0], jordan);
}

TEST(LinRing, DimensionsMatchGroebnerEngine) {
  for (auto R : {square_zero_ring(), cube_ring(), quartic_ring(), ring(3, {"x", "y"}, {1, 2}, {"x^3", "y^2", "x*y"}),
                 ring(5, {"x", "y"}, {1, 1}, {"x^2-y^2", "x*y"})}) {
    auto L = lin_ring(*R);
    std::map<int, std::int64_t> dims;
    for (int d : L.degrees) ++dims[d];
    for (int d = 0; d <= L.top + 2; ++d) EXPECT_EQ(dims[d], R->hilbert_function(d)) << R->describe() << " " << d;
  }
}

TEST(Realize, Examples) {
  auto C = cube_ring();
  auto L = realize(FPModule::free(C, {0}));
  EXPECT_EQ(L.dim(), 3u);
  EXPECT_EQ(rank(L.action[0], L.field), 2u);
  EXPECT_FALSE(multiply(L.action[0], L.action[0], L.field).is_zero());
  EXPECT_TRUE(multiply(L.action[0], multiply(L.action[0], L.action[0], L.field), L.field).is_zero());

  auto k = realize(FPModule::residue_field(C));
  EXPECT_EQ(k.dim(), 1u);
  EXPECT_TRUE(k.action[0].is_zero());

  auto A = square_zero_ring();
  auto m = realize(maximal_ideal(A));
  EXPECT_EQ(m.dim(), 2u);
  for (auto& a : m.action) EXPECT_TRUE(a.is_zero());
}

TEST(LinHom, Examples) {
  auto C = cube_ring();
  auto L = lin_ring(*C);
  auto R = regular_module(L);
  EXPECT_EQ(lin_hom(R, R).size(), 3u);
  EXPECT_EQ(lin_ext(L, residue_module(L), residue_module(L), 1), 1);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto M = random_module(L, rng).lin;
    EXPECT_EQ(lin_hom(residue_module(L), M).size(), lin_socle_dim(M));
  }
}

TEST(Enumerate, DualNumbers) {
  auto R = ring(2, {"x"}, {1}, {"x^2"});
  auto L = lin_ring(*R);
  auto e1 = enumerate_modules(L, 1);
  EXPECT_EQ(e1.modules.size(), 1u);
  auto e2 = enumerate_modules(L, 2);
  std::size_t dim2 = 0;
  for (auto& M : e2.modules) dim2 += M.dim() == 2;
  EXPECT_EQ(dim2, 3u);
  EXPECT_FALSE(e2.sampled);
}

TEST(Enumerate, SquareZeroRing) {
  auto R = square_zero_ring();
  auto L = lin_ring(*R);
  auto e = enumerate_modules(L, 2);
  for (auto& M : e.modules) EXPECT_TRUE(is_module(L, M));
  std::size_t dim2 = 0;
  for (auto& M : e.modules) dim2 += M.dim() == 2;
  // k^2, k + k(-1), and the cyclic modules R/(l) for a linear form l share one fingerprint.
  EXPECT_EQ(dim2, 3u);
}

TEST(Realize, PreservesInvariants) {
  std::mt19937_64 rng(17);
  for (auto R : {square_zero_ring(), cube_ring(), quartic_ring()}) {
    auto L = lin_ring(*R);
    for (int t = 0; t < 15; ++t) {
      auto rm = random_module(L, rng);
      auto M = rm.as_fp(R);
      auto lin = realize(M);
      EXPECT_EQ(static_cast<std::int64_t>(lin.dim()), M.length());
      EXPECT_EQ(lin.dim(), rm.lin.dim());
      EXPECT_EQ(lin_mu(lin), mu(M));
      EXPECT_EQ(lin_mu(rm.lin), mu(M));
      EXPECT_EQ(static_cast<std::int64_t>(lin_socle_dim(rm.lin)), socle_dim(M));
      EXPECT_EQ(graded_dims(lin), graded_dims(rm.lin));
    }
  }
}

TEST(CrossEngine, ExtDimensionsAgree) {
  std::mt19937_64 rng(5);
  for (auto R : {square_zero_ring(), cube_ring(), quartic_ring()}) {
    auto L = lin_ring(*R);
    for (int t = 0; t < 8; ++t) {
      auto a = random_module(L, rng), b = random_module(L, rng);
      auto gb = ext_dims(a.as_fp(R), b.as_fp(R), 3);
      auto lin = lin_ext_dims(L, a.lin, b.lin, 3);
      EXPECT_EQ(gb, lin) << R->describe();
    }
  }
}

TEST(CrossEngine, PresentRoundTrip) {
  std::mt19937_64 rng(23);
  auto R = square_zero_ring();
  auto L = lin_ring(*R);
  for (int t = 0; t < 10; ++t) {
    auto rm = random_module(L, rng);
    auto M = to_fp(R, rm.lin);
    EXPECT_EQ(M.length(), static_cast<std::int64_t>(rm.lin.dim()));
    EXPECT_EQ(lin_hom(realize(M), rm.lin).size(), lin_hom(rm.lin, rm.lin).size());
  }
}
