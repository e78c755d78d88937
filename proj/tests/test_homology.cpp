#include <gtest/gtest.h>

#include <abelcs/complexes.hpp>
#include <abelcs/verify.hpp>

using namespace abelcs;

namespace {

// disjoint copy of K next to itself
SimplicialComplex doubled(const SimplicialComplex& K) {
  std::vector<Simplex> s;
  const int n = int(K.n_vertices());
  for (auto& m : K.maximal()) {
    s.push_back(m);
    Simplex t;
    for (int v : m) t.push_back(v + n);
    s.push_back(t);
  }
  return SimplicialComplex::from_simplices(std::size_t(2 * n), s);
}

std::vector<std::size_t> betti(const CohomologyGroups& G) { return {G.betti.begin(), G.betti.end()}; }

}  // namespace

TEST(Cohomology, Sphere2) {
  auto p = cohomology(complexes::sphere2());
  EXPECT_EQ(betti(p.absolute), (std::vector<std::size_t>{1, 0, 1, 0}));
  EXPECT_TRUE(p.absolute.torsion[2].empty());
}

TEST(Cohomology, Torus7) {
  auto K = complexes::torus7();
  EXPECT_EQ(K.n_vertices(), 7u);
  EXPECT_EQ(K.count(2), 14u);
  auto p = cohomology(K);
  EXPECT_EQ(betti(p.absolute), (std::vector<std::size_t>{1, 2, 1, 0}));
}

TEST(Cohomology, EulerCharacteristics) {
  for (auto K : {complexes::sphere2(), complexes::sphere3(), complexes::torus7(), complexes::genus2_surface(),
                 complexes::solid_torus(), complexes::handlebody2(), complexes::s2_times_s1()}) {
    auto p = cohomology(K);
    EXPECT_EQ(euler_from_betti(p.absolute), p.euler_simplices);
  }
  EXPECT_EQ(cohomology(complexes::genus2_surface()).euler_simplices, -2);
}

TEST(Cohomology, LensSpaceTorsion) {
  for (int p : {2, 3}) {
    auto prof = cohomology(complexes::lens_space(p, 1));
    EXPECT_EQ(betti(prof.absolute), (std::vector<std::size_t>{1, 0, 0, 1}));
    EXPECT_EQ(prof.absolute.torsion[2], std::vector<Int>{Int(p)});
    EXPECT_TRUE(prof.absolute.torsion[1].empty());
  }
}

TEST(Cohomology, RejectsNonManifoldBoundary) {
  // three triangles on a common edge
  auto K = SimplicialComplex::from_simplices(5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  EXPECT_THROW(topological_boundary(K), ValidationError);
}

TEST(BoundaryLagrangian, SolidTorus) {
  auto bl = boundary_lagrangian(make_pair_with_boundary(complexes::solid_torus()));
  ASSERT_EQ(bl.genera(), std::vector<std::size_t>{1});
  EXPECT_EQ(bl.L.gens.cols(), 1u);
  EXPECT_TRUE(is_lagrangian(bl.L.gens));
}

TEST(BoundaryLagrangian, Handlebody2) {
  auto bl = boundary_lagrangian(make_pair_with_boundary(complexes::handlebody2()));
  ASSERT_EQ(bl.genera(), std::vector<std::size_t>{2});
  EXPECT_TRUE(is_lagrangian(bl.L.gens));
  EXPECT_EQ(bl.L.gens.cols(), 2u);
}

TEST(BoundaryLagrangian, SurfaceTimesIntervalIsDiagonal) {
  auto bl = boundary_lagrangian(make_pair_with_boundary(complexes::surface_times_interval(complexes::torus7())));
  ASSERT_EQ(bl.genera(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(bl.L, diagonal_lagrangian(1));
}

TEST(BoundaryLagrangian, DisjointSolidTori) {
  auto P = make_pair_with_boundary(doubled(complexes::solid_torus()));
  auto bl = boundary_lagrangian(P);
  ASSERT_EQ(bl.genera(), (std::vector<std::size_t>{1, 1}));
  EXPECT_TRUE(is_lagrangian(bl.L.gens));
}

TEST(MExponent, WorkedExamples) {
  EXPECT_EQ(m_exponent(cohomology(complexes::sphere3())), Rat(-1, 2));
  EXPECT_EQ(m_exponent(cohomology(make_pair_with_boundary(complexes::solid_torus()))), Rat(0));
  EXPECT_EQ(m_exponent(cohomology(complexes::s2_times_s1())), Rat(0));
  EXPECT_EQ(m_exponent(cohomology(make_pair_with_boundary(complexes::handlebody2()))), Rat(1, 4));
}

TEST(FiberDimension, WorkedExamples) {
  auto st = cohomology(make_pair_with_boundary(complexes::solid_torus()));
  EXPECT_EQ(fiber_dimension_q(st), 0);
  auto cyl = cohomology(make_pair_with_boundary(complexes::surface_times_interval(complexes::torus7())));
  // dim H^1(T^2 x I, d) = 1, so q = 1 - 2 + 1 - 0
  EXPECT_EQ(cyl.relative->betti[1], 1u);
  EXPECT_EQ(fiber_dimension_q(cyl), 0);
  auto two = cohomology(make_pair_with_boundary(doubled(complexes::solid_torus())));
  EXPECT_EQ(fiber_dimension_q(two), 2 * fiber_dimension_q(st));
  EXPECT_THROW(fiber_dimension_q(cohomology(complexes::sphere3())), ValidationError);
}

TEST(Duality, LefschetzAndTorsionOnPairs) {
  for (auto K : {complexes::solid_torus(), complexes::handlebody2(),
                 complexes::surface_times_interval(complexes::torus7()), doubled(complexes::solid_torus())}) {
    auto p = cohomology(make_pair_with_boundary(K));
    EXPECT_TRUE(lefschetz_identity_holds(p));
    EXPECT_TRUE(torsion_duality_holds(p));
  }
}
