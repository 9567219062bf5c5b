#include <gtest/gtest.h>

#include "homlab/campaign.hpp"
#include "test_support.hpp"

using namespace homlab;

TEST(Campaign, BuiltinRingsRoundTripThroughText) {
  auto R = *builtin_ring("cusp");
  EXPECT_EQ(ring_to_string(*R), "F5[x:2, y:3]/(-x^3+y^2)");
  EXPECT_FALSE(builtin_ring("nope").has_value());
  EXPECT_EQ(ring_to_string(**builtin_ring("plane")), "F5[x:1, y:1]");
}

TEST(Campaign, SeedsAreIndependentOfOrder) {
  EXPECT_EQ(derive_seed(7, 1, 3), derive_seed(7, 1, 3));
  EXPECT_NE(derive_seed(7, 1, 3), derive_seed(7, 1, 4));
  EXPECT_NE(derive_seed(7, 1, 3), derive_seed(7, 2, 3));
}

TEST(Campaign, RegistryRejectsUnknownIds) {
  EXPECT_THROW(statement("nosuch"), std::invalid_argument);
  EXPECT_GE(statements().size(), 15u);
}

TEST(Campaign, RerandomizedPresentationIsIsomorphic) {
  auto R = homlab::testing::node_ring();
  std::mt19937_64 rng(5);
  FPModule M = FPModule::quotient(R, {homlab::testing::poly(R, "x")});
  FPModule J = rerandomize(M, rng);
  EXPECT_EQ(J.num_generators(), 2u);
  EXPECT_EQ(is_isomorphic(M, J).verdict, Tri::True);
}

TEST(Campaign, EveryStatementRunsWithoutErrorsOrFails) {
  for (auto& s : statements()) {
    CampaignConfig cfg;
    cfg.statement = s.id;
    cfg.samples = 4;
    cfg.seed = 11;
    auto sum = run_campaign(cfg);
    EXPECT_EQ(sum.errors, 0u) << s.id;
    EXPECT_EQ(sum.fails, 0u) << s.id;
    EXPECT_EQ(sum.holds + sum.inconclusive, sum.instances) << s.id;
    EXPECT_GT(sum.instances, 0u) << s.id;
  }
}

TEST(Campaign, ResultsDoNotDependOnJobs) {
  CampaignConfig cfg;
  cfg.statement = "fitting";
  cfg.samples = 12;
  cfg.seed = 3;
  cfg.keep_verdicts = true;
  auto a = run_campaign(cfg);
  cfg.jobs = 3;
  auto b = run_campaign(cfg);
  ASSERT_EQ(a.verdicts.size(), b.verdicts.size());
  for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
    EXPECT_EQ(a.verdicts[i].conclusion, b.verdicts[i].conclusion);
    EXPECT_EQ(a.verdicts[i].reason, b.verdicts[i].reason);
    EXPECT_EQ(a.verdicts[i].seed, b.verdicts[i].seed);
  }
  EXPECT_EQ(a.holds, b.holds);
}

TEST(Campaign, ExhaustiveModeEnumeratesModules) {
  CampaignConfig cfg;
  cfg.statement = "minsyz";
  cfg.samples = 0;
  cfg.exhaustive = true;
  cfg.max_dim = 2;
  auto sum = run_campaign(cfg);
  EXPECT_GT(sum.enumerated_modules, 0u);
  EXPECT_EQ(sum.enumerated_instances, sum.enumerated_modules);
  EXPECT_EQ(sum.fails, 0u);
  EXPECT_EQ(sum.errors, 0u);
}

TEST(Campaign, ExhaustiveNeedsArtinianRing) {
  CampaignConfig cfg;
  cfg.statement = "genhunekehanes";
  cfg.exhaustive = true;
  EXPECT_THROW(run_campaign(cfg), std::invalid_argument);
}

TEST(Campaign, DepthZeroStatementsRejectOtherRings) {
  CampaignConfig cfg;
  cfg.statement = "minsyz";
  cfg.ring = homlab::testing::node_ring();
  EXPECT_THROW(run_campaign(cfg), std::invalid_argument);
}

TEST(Campaign, RefereeModeChecksEveryInstance) {
  CampaignConfig cfg;
  cfg.statement = "fittingbest";
  cfg.samples = 5;
  cfg.oracle = OracleMode::Referee;
  auto sum = run_campaign(cfg);
  EXPECT_EQ(sum.oracle_checked, sum.instances);
  EXPECT_EQ(sum.oracle_disagreements, 0u);
}

TEST(Campaign, EnginesAgreeOnSmallRings) {
  auto row = engine_agreement("quartic", *builtin_ring("quartic"), 6, 9, 3);
  EXPECT_EQ(row.agree, 6u);
  EXPECT_TRUE(row.disagreements.empty());
}
