#include <gtest/gtest.h>

#include "homlab/iso.hpp"
#include "test_support.hpp"

using namespace homlab;
using namespace homlab::testing;

namespace {

FPModule R1(const RingPtr& R) { return FPModule::free(R, {0}); }
FPModule cyclic(const RingPtr& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (auto* s : gens) g.push_back(poly(R, s));
  return FPModule::quotient(R, g);
}
FPModule k(const RingPtr& R) { return FPModule::residue_field(R); }

bool iso(const FPModule& a, const FPModule& b) { return is_isomorphic(a, b).verdict == Tri::True; }
bool iso_shift(const FPModule& a, const FPModule& b) { return is_isomorphic_up_to_shift(a, b).verdict == Tri::True; }

}  // namespace

TEST(Hom, FreeSourceGivesTarget) {
  auto R = node_ring();
  auto N = cyclic(R, {"x"});
  EXPECT_TRUE(iso(hom_module(R1(R), N), N));
}

TEST(Hom, CyclicEndomorphisms) {
  auto R = node_ring();
  auto M = cyclic(R, {"x"});
  EXPECT_TRUE(iso(hom_module(M, M), M));
}

TEST(Hom, ResidueFieldIntoSquareZeroRingIsSocle) {
  auto R = square_zero_ring();
  auto H = minimal_presentation(hom_module(k(R), R1(R)));
  EXPECT_EQ(H.generator_degrees(), (std::vector<int>{1, 1}));
  EXPECT_EQ(H.length(), 2);
  EXPECT_TRUE(iso(H, direct_sum(k(R).shifted(-1), k(R).shifted(-1))));
}

TEST(Hom, DegreeZeroMapsBetweenCyclics) {
  auto R = node_ring();
  EXPECT_EQ(hom_degree_dim(cyclic(R, {"x"}), cyclic(R, {"x"})), 1);
  EXPECT_EQ(hom_degree_dim(cyclic(R, {"x"}), cyclic(R, {"y"})), 0);
  EXPECT_TRUE(hom_module(cyclic(R, {"x"}), cyclic(R, {"y"})).is_zero());
  EXPECT_EQ(hom_degree_dim(k(R), R1(R)), 0);
}

TEST(Ext, NodeExampleModules) {
  auto R = node_ring();
  auto M = cyclic(R, {"x"});
  auto exts = ext_modules(M, M, 3);
  EXPECT_TRUE(exts[1].is_zero());
  EXPECT_EQ(exts[2].length(), 1);
  EXPECT_TRUE(iso_shift(exts[2], k(R)));
  EXPECT_TRUE(exts[3].is_zero());
  EXPECT_TRUE(iso(ext_module(M, M, 0), hom_module(M, M)));
}

TEST(Ext, FreeModuleHasNoHigherExt) {
  auto R = square_zero_ring();
  for (std::size_t i = 1; i <= 3; ++i) EXPECT_TRUE(ext_module(R1(R), k(R), i).is_zero());
}

TEST(Ext, ResidueFieldOverSquareZeroRing) {
  // Betti numbers of k are 1, 2, 4, 8 and the differentials vanish mod m.
  auto R = square_zero_ring();
  EXPECT_EQ(ext_dims(k(R), k(R), 3), (std::vector<std::int64_t>{1, 2, 4, 8}));
}

TEST(Tensor, Examples) {
  auto R = node_ring();
  auto M = cyclic(R, {"x"});
  EXPECT_TRUE(iso(tensor_module(M, R1(R)), M));
  EXPECT_TRUE(iso(tensor_module(M, cyclic(R, {"y"})), k(R)));
  for (auto A : {square_zero_ring(), cube_ring(), quartic_ring()}) EXPECT_TRUE(iso(tensor_module(k(A), k(A)), k(A)));
}

TEST(Duals, TransposeAndDual) {
  auto C = cube_ring();
  auto t = transpose(k(C));
  EXPECT_EQ(t.generator_degrees(), std::vector<int>{-1});
  EXPECT_TRUE(iso_shift(t, k(C)));

  auto cusp = cusp_ring();
  auto md = minimal_presentation(dual(maximal_ideal(cusp)));
  EXPECT_EQ(md.num_generators(), 2u);
  EXPECT_FALSE(is_free(md));

  auto R = node_ring();
  auto F = FPModule::free(R, {0, 0, 1});
  auto dF = dual(F);
  EXPECT_TRUE(is_free(dF));
  EXPECT_TRUE(iso(dF, FPModule::free(R, {0, 0, -1})));
}

TEST(Fitting, Examples) {
  auto R = node_ring();
  EXPECT_TRUE(fitting_ideal(k(R), 0) == Ideal(R, {poly(R, "x"), poly(R, "y")}));
  EXPECT_TRUE(fitting_ideal(k(R), 1).is_unit());
  EXPECT_TRUE(fitting_ideal(R1(R), 0).is_zero());
  EXPECT_TRUE(fitting_ideal(R1(R), 1).is_unit());
  EXPECT_TRUE(fitting_ideal(cyclic(R, {"x"}), 0) == Ideal(R, {poly(R, "x")}));
  EXPECT_TRUE(fitting_ideal(cyclic(R, {"x"}), 1).is_unit());
  EXPECT_TRUE(fitting_ideal(k(R), -1).is_zero());
}

TEST(Fitting, InvariantUnderPresentation) {
  auto R = node_ring();
  // R/(x) presented with a redundant generator and relation.
  FPModule a(R, {0, 1}, {{poly(R, "x"), poly(R, "0")}, {poly(R, "y"), poly(R, "-1")}, {poly(R, "0"), poly(R, "x")}});
  for (int j = 0; j < 3; ++j) EXPECT_TRUE(fitting_ideal(a, j) == fitting_ideal(cyclic(R, {"x"}), j)) << j;
}

TEST(Annihilator, Examples) {
  auto R = node_ring();
  EXPECT_TRUE(annihilator(k(R)) == Ideal(R, {poly(R, "x"), poly(R, "y")}));
  EXPECT_TRUE(annihilator(direct_sum(cyclic(R, {"x"}), cyclic(R, {"y"}))).is_zero());
  EXPECT_TRUE(annihilator(cyclic(R, {"x^2"})) == Ideal(R, {poly(R, "x^2")}));
}

TEST(Socle, Examples) {
  auto R = node_ring();
  EXPECT_TRUE(iso(socle(k(R)), k(R)));
  EXPECT_TRUE(socle(R1(R)).is_zero());
  auto A = square_zero_ring();
  EXPECT_EQ(socle_dim(R1(A)), 2);
}

TEST(Trace, FreeSummands) {
  auto A = square_zero_ring();
  auto tr = trace_ideal(direct_sum(R1(A), k(A)));
  EXPECT_TRUE(tr.trace.is_unit());
  ASSERT_TRUE(tr.witness.has_value());
  EXPECT_EQ(tr.witness->generator, 0u);
  EXPECT_FALSE(has_free_summand(k(A)));
  auto tm = trace_ideal(maximal_ideal(A));
  EXPECT_FALSE(tm.witness.has_value());
  EXPECT_TRUE(Ideal(A, {poly(A, "x"), poly(A, "y")}).contains(tm.trace));
}

TEST(Depth, Examples) {
  auto R = node_ring();
  auto d = depth_and_type(R1(R));
  EXPECT_EQ(d.depth, 1);
  EXPECT_EQ(d.type, 1);
  EXPECT_EQ(depth(k(R)), 0);
  EXPECT_EQ(nu(0, k(R)), 1);
  EXPECT_EQ(type(R1(square_zero_ring())), 2);
  EXPECT_EQ(type(R1(cube_ring())), 1);
  EXPECT_EQ(depth(FPModule::free(R, {})), kInfiniteDepth);
  EXPECT_EQ(depth(R1(plane_ring())), 2);
}

TEST(Depth, AgreesWithRegularSequenceSearch) {
  for (auto R : {node_ring(), plane_ring(), cusp_ring()}) {
    auto M = R1(R);
    int d = depth(M);
    EXPECT_TRUE(general_regular_sequence({M}, static_cast<std::size_t>(d), 3).has_value());
    EXPECT_FALSE(general_regular_sequence({M}, static_cast<std::size_t>(d) + 1, 3, 16).has_value());
  }
}

TEST(Multiplicity, Examples) {
  auto R = node_ring();
  EXPECT_EQ(multiplicity(R1(R), {poly(R, "x+y")}), 2);
  EXPECT_EQ(multiplicity(FPModule::free(R, {0, 0, 0}), {poly(R, "x+y")}), 6);
  auto C = cusp_ring();
  auto seq = general_regular_sequence({R1(C)}, 1, 9);
  ASSERT_TRUE(seq.has_value());
  EXPECT_EQ(multiplicity(R1(C), *seq), 6);
}

TEST(Matlis, Duals) {
  auto C = cube_ring();
  EXPECT_TRUE(iso(matlis_dual(k(C)), k(C)));
  auto D = matlis_dual(R1(C));
  EXPECT_TRUE(iso_shift(D, R1(C)));
  EXPECT_EQ(D.length(), 3);
  auto A = square_zero_ring();
  FPModule M(A, {0, 0}, {{poly(A, "x"), poly(A, "y")}});
  EXPECT_EQ(matlis_dual(M).length(), M.length());
  EXPECT_TRUE(iso(matlis_dual(matlis_dual(M)), M));
  EXPECT_THROW(matlis_dual(R1(node_ring())), ModuleError);
}

TEST(Canonical, GorensteinTest) {
  auto cusp = gorenstein_test(cusp_ring());
  EXPECT_TRUE(cusp.gorenstein);
  EXPECT_TRUE(cusp.consistent);
  auto sq = gorenstein_test(square_zero_ring());
  EXPECT_FALSE(sq.gorenstein);
  EXPECT_EQ(sq.canonical_mu, 2u);
  EXPECT_TRUE(sq.consistent);
  EXPECT_TRUE(is_free(canonical_module(plane_ring())));
  EXPECT_TRUE(iso(canonical_module(cusp_ring()), R1(cusp_ring())));
}

TEST(Isomorphism, Basics) {
  auto A = square_zero_ring();
  EXPECT_EQ(is_isomorphic(R1(A), R1(A)).verdict, Tri::True);
  EXPECT_EQ(is_isomorphic(R1(A), k(A)).verdict, Tri::False);
  auto R = node_ring();
  EXPECT_EQ(is_isomorphic(cyclic(R, {"x"}), cyclic(R, {"y"})).verdict, Tri::False);
  auto H = hom_module(FPModule::free(R, {0, 0}), cyclic(R, {"x"}));
  EXPECT_EQ(is_isomorphic_to_power(H, cyclic(R, {"x"}), 2).verdict, Tri::True);
  EXPECT_EQ(is_isomorphic_to_power(H, cyclic(R, {"x"}), 1).verdict, Tri::False);
}

TEST(Invariants, NuMultiplicativityAtDepthZero) {
  auto A = square_zero_ring();
  std::vector<FPModule> mods{R1(A), k(A), maximal_ideal(A), FPModule(A, {0, 0}, {{poly(A, "x"), poly(A, "y")}})};
  for (auto& M : mods)
    for (auto& N : mods)
      EXPECT_EQ(nu(0, hom_module(M, N)), static_cast<std::int64_t>(mu(M)) * nu(0, N));
}

TEST(Isomorphism, LocalIgnoresGrading) {
  auto A = square_zero_ring();
  // k + k(-1) is not a graded power of k, but it is k^2 after forgetting degrees.
  auto twisted = direct_sum(k(A), k(A).shifted(-1));
  EXPECT_EQ(is_isomorphic_to_power(twisted, direct_sum(k(A), k(A)), 1).verdict, Tri::False);
  EXPECT_EQ(is_locally_isomorphic_to_power(twisted, k(A), 2).verdict, Tri::True);
  EXPECT_EQ(is_locally_isomorphic(R1(A), k(A)).verdict, Tri::False);
  auto R = node_ring();
  EXPECT_EQ(is_locally_isomorphic(cyclic(R, {"x"}), cyclic(R, {"y"})).verdict, Tri::False);
  EXPECT_EQ(is_locally_isomorphic(cyclic(R, {"x"}).shifted(3), cyclic(R, {"x"})).verdict, Tri::True);
  EXPECT_EQ(is_locally_isomorphic(maximal_ideal(R), direct_sum(cyclic(R, {"x"}), cyclic(R, {"y"})).shifted(-1)).verdict,
            Tri::True);
  EXPECT_EQ(is_locally_isomorphic(maximal_ideal(cusp_ring()), R1(cusp_ring())).verdict, Tri::False);
}
