#include <gtest/gtest.h>

#include "homlab/regular.hpp"
#include "test_support.hpp"

using namespace homlab;
using namespace homlab::testing;

namespace {

Column col(const RingPtr& R, std::initializer_list<const char*> entries) {
  Column c;
  for (auto* e : entries) c.push_back(poly(R, e));
  return c;
}

std::vector<std::int64_t> hf(const FPModule& M, int from, int to) {
  std::vector<std::int64_t> out;
  for (int d = from; d <= to; ++d) out.push_back(M.hilbert_function(d));
  return out;
}

void expect_composites_zero(const Resolution& res) {
  for (std::size_t i = 0; i + 1 < res.length(); ++i) {
    const Matrix& a = res.maps[i];
    const Matrix& b = res.maps[i + 1];
    for (auto& c : b.cols) EXPECT_TRUE(column_is_zero(apply_matrix(res.ring, a, c))) << "step " << i;
  }
}

}  // namespace

TEST(Syzygy, RowOfVariablesOnNode) {
  auto R = node_ring();
  ModuleMap m{FreeModule{R, {1, 1}}, FreeModule{R, {0}}, Matrix(1, {col(R, {"x"}), col(R, {"y"})})};
  auto K = syzygy(m);
  ASSERT_EQ(K.source.rank(), 2u);
  std::vector<Column> expected{col(R, {"y", "0"}), col(R, {"0", "x"})};
  for (auto& e : expected) EXPECT_NE(std::find(K.matrix.cols.begin(), K.matrix.cols.end(), e), K.matrix.cols.end());
}

TEST(Syzygy, IdentityHasNoKernel) {
  auto R = node_ring();
  ModuleMap m{FreeModule{R, {0}}, FreeModule{R, {0}}, identity_matrix(1)};
  EXPECT_EQ(syzygy(m).source.rank(), 0u);
}

TEST(Syzygy, AnnihilatorOfXInCubeRing) {
  auto R = cube_ring();
  ModuleMap m{FreeModule{R, {1}}, FreeModule{R, {0}}, Matrix(1, {col(R, {"x"})})};
  auto K = syzygy(m);
  ASSERT_EQ(K.source.rank(), 1u);
  EXPECT_EQ(K.matrix.cols[0], col(R, {"x^2"}));
  EXPECT_EQ(K.source.degrees, std::vector<int>{3});
}

TEST(MinimalPresentation, UnitEntryKillsModule) {
  auto R = node_ring();
  FPModule M(R, {0}, {col(R, {"1"})});
  auto min = minimal_presentation(M);
  EXPECT_EQ(min.num_generators(), 0u);
  EXPECT_TRUE(M.is_zero());
}

TEST(MinimalPresentation, RedundantPresentationOfRPlusK) {
  auto R = square_zero_ring();
  // Generators e1, e2, e3 with e3 = e1 + e2 and x e2 = y e2 = 0: R + k with a redundant generator.
  FPModule M(R, {0, 0, 0}, {col(R, {"1", "1", "1"}), col(R, {"0", "x", "0"}), col(R, {"0", "y", "0"})});
  auto min = minimal_presentation(M);
  EXPECT_EQ(min.num_generators(), 2u);
  EXPECT_TRUE(is_minimal_presentation(min));
  EXPECT_EQ(hf(M, 0, 3), hf(min, 0, 3));
  EXPECT_EQ(hf(min, 0, 3), (std::vector<std::int64_t>{2, 2, 0, 0}));
}

TEST(MinimalPresentation, Idempotent) {
  auto R = node_ring();
  FPModule M(R, {0, 1}, {col(R, {"x", "0"}), col(R, {"y^2", "y"})});
  auto once = minimal_presentation(M);
  auto twice = minimal_presentation(once);
  EXPECT_EQ(once.generator_degrees(), twice.generator_degrees());
  EXPECT_EQ(once.relations(), twice.relations());
  EXPECT_EQ(hf(M, 0, 6), hf(once, 0, 6));
}

TEST(Resolution, ResidueFieldOfCubeRingIsPeriodic) {
  auto R = cube_ring();
  auto res = resolution(FPModule::residue_field(R), 5);
  EXPECT_EQ(res.betti(), (std::vector<std::size_t>{1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(res.maps[0].cols[0], col(R, {"x"}));
  EXPECT_EQ(res.maps[1].cols[0], col(R, {"x^2"}));
  EXPECT_EQ(res.maps[2].cols[0], col(R, {"x"}));
  expect_composites_zero(res);
}

TEST(Resolution, FreeModuleStops) {
  auto R = node_ring();
  auto res = resolution(FPModule::free(R, {0}), 3);
  EXPECT_EQ(res.rank(0), 1u);
  EXPECT_EQ(res.rank(1), 0u);
}

TEST(Resolution, CyclicModuleOnNodeAlternates) {
  auto R = node_ring();
  auto res = resolution(FPModule::quotient(R, {poly(R, "x")}), 4);
  EXPECT_EQ(res.betti(), (std::vector<std::size_t>{1, 1, 1, 1, 1}));
  EXPECT_EQ(res.maps[0].cols[0], col(R, {"x"}));
  EXPECT_EQ(res.maps[1].cols[0], col(R, {"y"}));
  EXPECT_EQ(res.maps[2].cols[0], col(R, {"x"}));
  expect_composites_zero(res);
}

TEST(Resolution, BettiNumbersIndependentOfStartingPresentation) {
  auto R = square_zero_ring();
  FPModule a = FPModule::residue_field(R);
  // e2 = y e1 and e2 = 0: a second presentation of k with a unit entry.
  FPModule b(R, {0, 1}, {col(R, {"x", "0"}), col(R, {"y", "-1"}), col(R, {"0", "1"})});
  EXPECT_EQ(resolution(a, 3).betti(), resolution(b, 3).betti());
  EXPECT_EQ(resolution(a, 3).betti(), (std::vector<std::size_t>{1, 2, 4, 8}));
}

TEST(Resolution, EntriesLieInMaximalIdeal) {
  auto R = node_ring();
  FPModule M(R, {0, 0}, {col(R, {"x", "y"}), col(R, {"y^2", "0"})});
  auto res = resolution(M, 4);
  for (auto& m : res.maps)
    for (auto& c : m.cols)
      for (auto& e : c) EXPECT_FALSE(e.is_unit_constant());
  expect_composites_zero(res);
}

TEST(Maps, ZeroMap) {
  auto R = node_ring();
  auto M = FPModule::quotient(R, {poly(R, "x")});
  auto N = FPModule::quotient(R, {poly(R, "y")});
  Matrix zero = Matrix::zero(1, 1);
  EXPECT_EQ(hf(kernel_of_map(M, N, zero).module, 0, 5), hf(M, 0, 5));
  EXPECT_TRUE(image_of_map(M, N, zero).module.is_zero());
  EXPECT_EQ(hf(cokernel_of_map(M, N, zero), 0, 5), hf(N, 0, 5));
}

TEST(Maps, MultiplicationByXOnTruncation) {
  auto R = cube_ring();
  auto M = FPModule::quotient(R, {poly(R, "x^2")});
  auto target = M.shifted(1);
  Matrix x = scalar_matrix(1, poly(R, "x"));
  auto ker = kernel_of_map(M, target, x).module;
  EXPECT_EQ(ker.generator_degrees(), std::vector<int>{1});
  EXPECT_EQ(ker.length(), 1);
  auto cok = cokernel_of_map(M, target, x);
  EXPECT_EQ(cok.generator_degrees(), std::vector<int>{-1});
  EXPECT_EQ(cok.length(), 1);
}

TEST(Maps, IdentityHasTrivialKernelAndCokernel) {
  auto R = square_zero_ring();
  FPModule M(R, {0, 1}, {col(R, {"y", "0"})});
  auto id = identity_matrix(2);
  EXPECT_EQ(kernel_of_map(M, M, id).module.num_generators(), 0u);
  EXPECT_TRUE(cokernel_of_map(M, M, id).is_zero());
}

TEST(Maps, IncompatibleMatrixNamesColumn) {
  auto R = node_ring();
  auto M = FPModule::quotient(R, {poly(R, "x")});
  auto F = FPModule::free(R, {0});
  try {
    kernel_of_map(M, F, identity_matrix(1));
    FAIL() << "expected an incompatibility error";
  } catch (const ModuleError& e) {
    EXPECT_NE(std::string(e.what()).find("relation column 0"), std::string::npos);
  }
}

TEST(Regular, Examples) {
  auto R = node_ring();
  auto Rm = FPModule::free(R, {0});
  EXPECT_FALSE(is_regular_element(poly(R, "x"), Rm));
  EXPECT_TRUE(is_regular_element(poly(R, "x+y"), Rm));
  auto C = cube_ring();
  EXPECT_FALSE(is_regular_element(poly(C, "x"), FPModule::free(C, {0})));
  EXPECT_THROW(is_regular_element(poly(R, "3"), Rm), std::invalid_argument);
}

TEST(Regular, SequenceSearch) {
  auto R = node_ring();
  auto seq = general_regular_sequence({FPModule::free(R, {0})}, 1, 11);
  ASSERT_TRUE(seq.has_value());
  ASSERT_EQ(seq->size(), 1u);
  EXPECT_EQ(seq->front().terms().size(), 2u);
  EXPECT_EQ(general_regular_sequence({FPModule::free(R, {0})}, 1, 11), seq);
  EXPECT_FALSE(general_regular_sequence({FPModule::free(square_zero_ring(), {0})}, 1, 3).has_value());
  auto P = plane_ring();
  auto two = general_regular_sequence({FPModule::free(P, {0}), FPModule::free(P, {0})}, 2, 5);
  ASSERT_TRUE(two.has_value());
  EXPECT_EQ(two->size(), 2u);
  EXPECT_TRUE(cut_down(FPModule::free(P, {0}), *two).finite_length());
}

TEST(CutDown, NodeByGenericLine) {
  auto R = node_ring();
  auto M = cut_down(FPModule::free(R, {0}), poly(R, "x+y"));
  EXPECT_EQ(hf(M, 0, 3), (std::vector<std::int64_t>{1, 1, 0, 0}));
  EXPECT_EQ(M.ring()->hilbert_function(1), 1);
  EXPECT_EQ(M.ring()->hilbert_function(2), 0);
}

TEST(CutDown, FirstDifferenceOfHilbertFunction) {
  auto R = node_ring();
  FPModule M(R, {0, 0}, {col(R, {"x", "0"})});
  auto f = poly(R, "x+y");
  auto Mbar = cut_down(M, f);
  for (int d = 1; d < 6; ++d) EXPECT_EQ(Mbar.hilbert_function(d), M.hilbert_function(d) - M.hilbert_function(d - 1));
  // Commutes with direct sums.
  auto S = direct_sum(M, FPModule::free(R, {1}));
  EXPECT_EQ(hf(cut_down(S, f), 0, 5), hf(direct_sum(Mbar, FPModule::free(Mbar.ring(), {1})), 0, 5));
}

TEST(CutDown, MaximalIdealOfCusp) {
  auto R = cusp_ring();
  auto m = maximal_ideal(R);
  EXPECT_EQ(mu(m), 2u);
  auto seq = general_regular_sequence({FPModule::free(R, {0}), m}, 1, 1);
  ASSERT_TRUE(seq.has_value());
  EXPECT_EQ(*seq->front().homogeneous_degree(), 6);
  auto mbar = cut_down(m, seq->front());
  EXPECT_TRUE(mbar.finite_length());
  EXPECT_EQ(mu(mbar), 2u);
  EXPECT_THROW(cut_down(FPModule::free(square_zero_ring(), {0}), poly(square_zero_ring(), "x")), ModuleError);
}

TEST(Mu, MatchesResidueDimension) {
  auto R = node_ring();
  FPModule M(R, {0, 0, 1}, {col(R, {"x", "y", "0"}), col(R, {"0", "x", "1"})});
  auto rbar = R->with_relations({poly(R, "x"), poly(R, "y")});
  auto bar = M.base_changed(rbar);
  std::int64_t total = 0;
  for (int d = -2; d < 4; ++d) total += bar.hilbert_function(d);
  EXPECT_EQ(static_cast<std::int64_t>(mu(M)), total);
}
