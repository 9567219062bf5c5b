#include <gtest/gtest.h>

#include "homlab/theorems.hpp"
#include "test_support.hpp"

using namespace homlab;
using namespace homlab::testing;

namespace {

FPModule R1(const RingPtr& R) { return FPModule::free(R, {0}); }
FPModule k(const RingPtr& R) { return FPModule::residue_field(R); }
FPModule cyclic(const RingPtr& R, const char* g) { return FPModule::quotient(R, {poly(R, g)}); }

std::string fact(const Verdict& v, const std::string& key) {
  auto* f = v.find(key);
  return f ? *f : "<missing>";
}

}  // namespace

TEST(Minsyz, SyzygyOfResidueField) {
  auto A = square_zero_ring();
  auto v = check_minsyz(syzygy_witness(k(A)));
  EXPECT_EQ(v.conclusion, Outcome::Holds) << v.reason;
  EXPECT_EQ(fact(v, "free_summand"), "false");
  EXPECT_EQ(fact(v, "faithful"), "false");
  EXPECT_EQ(fact(v, "socle_acts"), "false");
  EXPECT_EQ(fact(v, "not_minimal_syzygy"), "false");
}

TEST(Minsyz, FreeSummandMakesAllTrue) {
  auto A = square_zero_ring();
  // k presented with a redundant generator e2 = 0, so the syzygy is m + R.
  FPModule X(A, {0, 0}, {{poly(A, "x"), poly(A, "0")}, {poly(A, "y"), poly(A, "0")}, {poly(A, "0"), poly(A, "1")}});
  auto v = check_minsyz(syzygy_witness(X));
  EXPECT_EQ(v.conclusion, Outcome::Holds) << v.reason;
  EXPECT_EQ(fact(v, "free_summand"), "true");
  EXPECT_EQ(fact(v, "not_minimal_syzygy"), "true");
}

TEST(Minsyz, ZeroSyzygyIsInconclusive) {
  auto A = square_zero_ring();
  auto v = check_minsyz(syzygy_witness(R1(A)));
  EXPECT_EQ(v.conclusion, Outcome::Inconclusive);
  EXPECT_THROW(check_minsyz(syzygy_witness(k(node_ring()))), ModuleError);
}

TEST(Fitting, Examples) {
  auto A = square_zero_ring();
  auto v1 = check_fitting(cyclic(A, "x"), k(A), 1);
  EXPECT_EQ(v1.conclusion, Outcome::Holds) << v1.reason;
  EXPECT_EQ(fact(v1, "hom_iso_to_Nr"), "true");
  auto v2 = check_fitting(maximal_ideal(A), k(A), 1);
  EXPECT_EQ(v2.conclusion, Outcome::Holds) << v2.reason;
  EXPECT_EQ(fact(v2, "hom_iso_to_Nr"), "false");
  EXPECT_EQ(fact(v2, "mu_M"), "2");
  auto v3 = check_fitting(FPModule::free(A, {0, 0}), cyclic(A, "y"), 2);
  EXPECT_EQ(v3.conclusion, Outcome::Holds) << v3.reason;
  EXPECT_EQ(fact(v3, "hom_iso_to_Nr"), "true");
  auto v4 = check_fitting(k(node_ring()), R1(node_ring()), 1);
  EXPECT_EQ(v4.conclusion, Outcome::Inconclusive);
  EXPECT_EQ(v4.reason, "hypothesis N_finite_length is false");
}

TEST(Fitting, OnlyAnUngradedPowerIsAPower) {
  // Hom(k + k(-1), k) = k + k(1): a power of k only after forgetting degrees.
  auto A = square_zero_ring();
  auto v = check_fitting(direct_sum(k(A), k(A).shifted(-1)), k(A), 2);
  EXPECT_EQ(v.conclusion, Outcome::Holds) << v.reason;
  EXPECT_EQ(fact(v, "hom_iso_to_Nr"), "true");
}

TEST(FittingM, Examples) {
  auto C = cube_ring();
  EXPECT_EQ(check_fittingM(k(C), 1).conclusion, Outcome::Holds);
  EXPECT_EQ(check_fittingM(R1(C), 1).conclusion, Outcome::Holds);
  auto A = square_zero_ring();
  auto v = check_fittingM(cyclic(A, "x"), 1);
  EXPECT_EQ(v.conclusion, Outcome::Holds) << v.reason;
  EXPECT_EQ(check_fittingM(maximal_ideal(A), 1).conclusion, Outcome::Inconclusive);
}

TEST(FittingBest, NonConverseOnDepthOneRing) {
  auto C = cusp_ring();
  auto v = check_fittingbest_nonconverse(maximal_ideal(C), R1(C), 1);
  EXPECT_EQ(v.conclusion, Outcome::Holds) << v.reason;
  EXPECT_EQ(fact(v, "depth_R"), "1");
  auto w = check_fittingbest(cyclic(square_zero_ring(), "x"), k(square_zero_ring()));
  EXPECT_EQ(w.conclusion, Outcome::Holds) << w.reason;
}

TEST(Mfree, FaithfulTargetForcesFreeness) {
  auto A = square_zero_ring();
  auto v = check_Mfree(FPModule::free(A, {0, 1}), R1(A), 0);
  EXPECT_EQ(v.conclusion, Outcome::Holds) << v.reason;
  EXPECT_EQ(fact(v, "M_free_of_rank_r"), "true");
  auto w = check_Mfree(k(A), R1(A), 0);
  EXPECT_EQ(w.conclusion, Outcome::Inconclusive);
}

TEST(Mfree, NodeExampleOnlyGivesTheQuotientStatement) {
  auto R = node_ring();
  auto M = cyclic(R, "x");
  auto v = check_Mfree(M, M, 1);
  EXPECT_EQ(v.conclusion, Outcome::Holds) << v.reason;
  EXPECT_EQ(fact(v, "quotient_free_of_rank_r"), "true");
  EXPECT_EQ(fact(v, "N_faithful"), "false");
  EXPECT_EQ(v.find("M_free_of_rank_r"), nullptr);
}

TEST(ConditionsNeeded, Regression) {
  auto R = node_ring();
  auto v = check_conditionsneeded(cyclic(R, "x"), cyclic(R, "x"));
  EXPECT_EQ(v.conclusion, Outcome::Holds) << v.reason;
  EXPECT_EQ(fact(v, "ext1_dim"), "0");
  EXPECT_EQ(fact(v, "ext2_dim"), "1");
  EXPECT_EQ(fact(v, "M_free"), "false");
  EXPECT_EQ(fact(v, "M_has_free_summand"), "false");
  EXPECT_EQ(fact(v, "gap"), "faithfulness");
}

TEST(MM, CyclicModules) {
  auto A = square_zero_ring();
  EXPECT_EQ(check_MM(R1(A)).conclusion, Outcome::Holds);
  auto v = check_MM(cyclic(A, "x"));
  EXPECT_NE(v.conclusion, Outcome::Fails);
}

TEST(DualFree, Examples) {
  auto R = node_ring();
  auto v = check_dualfree(direct_sum(R1(R), k(R)));
  EXPECT_EQ(v.conclusion, Outcome::Inconclusive);
  EXPECT_NE(v.reason.find("ext_M_R_vanishing_1_to_t"), std::string::npos) << v.reason;
  EXPECT_EQ(check_dualfree(FPModule::free(R, {0, 2})).conclusion, Outcome::Holds);
  auto A = square_zero_ring();
  auto w = check_dualfree(direct_sum(R1(A), k(A)));
  EXPECT_EQ(w.conclusion, Outcome::Holds) << w.reason;
  EXPECT_EQ(fact(w, "free_summand_generator"), "0");
  EXPECT_EQ(check_dualfree(k(A)).conclusion, Outcome::Inconclusive);
}

TEST(HomFree, Modes) {
  auto A = square_zero_ring();
  // N = R + m is a syzygy; Hom(R, N) = N is faithful.
  auto N = direct_sum(R1(A), maximal_ideal(A));
  EXPECT_EQ(check_hom_free(R1(A), N, HomFreeMode::FreeSummand).conclusion, Outcome::Holds);
  EXPECT_EQ(check_hom_free(R1(A), maximal_ideal(A), HomFreeMode::FreeSummand).conclusion, Outcome::Inconclusive);
  EXPECT_EQ(check_hom_free(R1(A), R1(A), HomFreeMode::NFree).conclusion, Outcome::Holds);
  EXPECT_EQ(check_hom_free(R1(A), R1(A), HomFreeMode::MFree).conclusion, Outcome::Holds);
  // k is not torsionless over this ring.
  EXPECT_EQ(check_hom_free(R1(A), k(A), HomFreeMode::NFree).conclusion, Outcome::Inconclusive);
}

TEST(HomFree, EndomorphismsOverTheCusp) {
  auto C = cusp_ring();
  EXPECT_EQ(check_hom_free(R1(C), R1(C), HomFreeMode::MFree).conclusion, Outcome::Holds);
  auto v = check_hom_free(maximal_ideal(C), maximal_ideal(C), HomFreeMode::MFree);
  EXPECT_EQ(v.conclusion, Outcome::Inconclusive);
  EXPECT_NE(v.reason.find("hom_free"), std::string::npos) << v.reason;
}

TEST(TensorCM, NodePairs) {
  auto R = node_ring();
  std::vector<FPModule> mods{R1(R), cyclic(R, "x"), cyclic(R, "y")};
  for (auto& M : mods)
    for (auto& N : mods) {
      auto v = check_tensor_cm(M, N);
      EXPECT_EQ(v.conclusion, Outcome::Holds) << describe(M) << " / " << describe(N) << ": " << v.reason;
      if (ext_vanishes(M, N, 1, 1)) EXPECT_EQ(fact(v, "depth_tensor"), "1");
    }
}

TEST(TensorCM, ArtinianIsVacuous) {
  auto A = square_zero_ring();
  EXPECT_EQ(check_tensor_cm(k(A), maximal_ideal(A)).conclusion, Outcome::Holds);
}

TEST(TestGor, Examples) {
  auto v = check_testgor(R1(cusp_ring()));
  EXPECT_EQ(v.conclusion, Outcome::Holds) << v.reason;
  auto w = check_testgor(maximal_ideal(cusp_ring()));
  EXPECT_NE(w.conclusion, Outcome::Fails) << w.reason;
  auto A = square_zero_ring();
  for (auto M : {R1(A), k(A), maximal_ideal(A)}) {
    auto u = check_testgor(M);
    EXPECT_EQ(u.conclusion, Outcome::Inconclusive) << describe(M);
  }
}

TEST(Semidualizing, Examples) {
  auto C = cusp_ring();
  EXPECT_TRUE(check_semidualizing(R1(C), 2).value());
  EXPECT_TRUE(check_semidualizing(canonical_module(C), 2).value());
  auto A = square_zero_ring();
  EXPECT_TRUE(check_semidualizing(canonical_module(A), 2).value());
  auto s = check_semidualizing(k(A), 2);
  EXPECT_FALSE(s.homothety_iso);
  EXPECT_FALSE(s.value());
  EXPECT_EQ(s.label(), "semidualizing up to Ext bound 2");
}

TEST(Nu, DepthOneSuiteOnTheNode) {
  auto R = node_ring();
  std::vector<FPModule> mods{R1(R), cyclic(R, "x"), cyclic(R, "y"), maximal_ideal(R)};
  int applied = 0;
  for (auto& M : mods)
    for (auto& N : mods) {
      auto v = check_nu(M, N, 1);
      EXPECT_NE(v.conclusion, Outcome::Fails) << v.reason;
      applied += v.conclusion == Outcome::Holds;
    }
  EXPECT_GT(applied, 4);
}

TEST(HomCutDown, Node) {
  auto R = node_ring();
  std::vector<FPModule> mods{R1(R), cyclic(R, "x"), maximal_ideal(R)};
  for (auto& M : mods)
    for (auto& N : mods) {
      auto v = check_homcutdown(M, N, 5);
      EXPECT_EQ(v.conclusion, Outcome::Holds) << v.reason << " " << fact(v, "hilbert_profile");
    }
}

TEST(Evaluators, MinimalSyzygyEmbedding) {
  auto A = square_zero_ring();
  EXPECT_TRUE(embeds_in_maximal_ideal_times_free(maximal_ideal(A)));
  EXPECT_FALSE(embeds_in_maximal_ideal_times_free(R1(A)));
  EXPECT_FALSE(embeds_in_maximal_ideal_times_free(direct_sum(R1(A), k(A))));
  auto R = node_ring();
  EXPECT_TRUE(bidual_map_is_isomorphism(cyclic(R, "x"), R1(R)));
  EXPECT_FALSE(bidual_map_is_isomorphism(k(R), R1(R)));
  EXPECT_TRUE(homothety_is_isomorphism(R1(R)));
  EXPECT_FALSE(homothety_is_isomorphism(cyclic(R, "x")));
}
