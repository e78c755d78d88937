#include <gtest/gtest.h>

#include <abelcs/complexes.hpp>
#include <abelcs/verify.hpp>

using namespace abelcs;

namespace {

BasedChainComplex block_sum(const BasedChainComplex& a, const BasedChainComplex& b) {
  const std::size_t n = std::max(a.length(), b.length());
  BasedChainComplex A = a.padded(n), B = b.padded(n), C;
  for (std::size_t q = 0; q < n; ++q) C.ranks.push_back(A.ranks[q] + B.ranks[q]);
  for (std::size_t q = 0; q + 1 < n; ++q) {
    RatMatrix d(C.ranks[q + 1], C.ranks[q]);
    d.set_block(0, 0, A.d[q]);
    d.set_block(A.ranks[q + 1], A.ranks[q], B.d[q]);
    C.d.push_back(d);
  }
  C.h.assign(n, std::nullopt);
  C.validate();
  return C;
}

}  // namespace

TEST(Torsion, TimesTwoComplex) {
  auto C = BasedChainComplex::from_integer({1, 1}, {IntMatrix{{2}}});
  EXPECT_EQ(torsion(C).value, Rat(2));
  EXPECT_NEAR(torsion_oracle(C), 2.0, 1e-15);
}

TEST(Torsion, IdentityComplex) {
  auto C = BasedChainComplex::from_integer({1, 1}, {IntMatrix{{1}}});
  EXPECT_EQ(torsion(C).value, Rat(1));
  EXPECT_NEAR(torsion_oracle(C), 1.0, 1e-15);
}

TEST(Torsion, EmptyComplexIsOne) { EXPECT_EQ(torsion(BasedChainComplex::from_integer({0, 0}, {IntMatrix(0, 0)})).value, Rat(1)); }

TEST(Torsion, CircleAgainstOracle) {
  auto C = cochain_complex(complexes::boundary_of_simplex(2));
  auto T = torsion(C);
  EXPECT_GT(T.to_double(), 0);
  EXPECT_NEAR(T.to_double(), torsion_oracle(C), 1e-12 * T.to_double());
}

TEST(Torsion, RandomAcyclicAgainstOracle) {
  Rng rng(51);
  for (int t = 0; t < 100; ++t) {
    auto C = random_acyclic_complex(rng);
    double a = torsion(C).to_double(), b = torsion_oracle(C);
    ASSERT_LT(std::abs(a - b) / b, 1e-12) << t;
  }
}

TEST(Torsion, SurfacesAgainstOracle) {
  for (auto K : {complexes::sphere2(), complexes::torus7(), complexes::solid_torus()}) {
    auto C = cochain_complex(K);
    double a = torsion(C).to_double(), b = torsion_oracle(C);
    EXPECT_LT(std::abs(a - b) / b, 1e-12);
  }
}

TEST(Torsion, UnimodularCellChangeInvariance) {
  Rng rng(52);
  for (int t = 0; t < 30; ++t) {
    auto C = random_acyclic_complex(rng);
    auto D = C;
    std::vector<RatMatrix> P;
    for (auto r : C.ranks) P.push_back(to_rat(random_unimodular(r, rng)));
    for (std::size_t q = 0; q < C.d.size(); ++q) D.d[q] = inverse(P[q + 1]) * C.d[q] * P[q];
    ASSERT_EQ(torsion(D).value, torsion(C).value);
  }
}

TEST(Torsion, ScalingLaw) {
  Rng rng(53);
  for (auto K : {complexes::torus7(), complexes::sphere2(), complexes::genus2_surface()}) {
    auto C = cochain_complex(K);
    auto base = torsion(C);
    for (int t = 0; t < 3; ++t) {
      auto D = C;
      Rat expect = base.value;
      for (std::size_t q = 0; q < D.length(); ++q) {
        RatMatrix A = random_rational_basis_change(base.bases[q].cols(), rng);
        D.h[q] = RatMatrix(base.bases[q] * A);
        Rat det = A.rows() ? determinant(A) : Rat(1);
        if (det < 0) det = -det;
        expect = q % 2 ? Rat(expect * det) : Rat(expect / det);
      }
      ASSERT_EQ(torsion(D).value, expect);
    }
  }
}

TEST(Torsion, RejectsBadBases) {
  auto C = cochain_complex(complexes::torus7());
  auto D = C;
  D.h[1] = RatMatrix(C.ranks[1], 2);  // zero vectors
  EXPECT_THROW(torsion(D), ValidationError);
  EXPECT_THROW(BasedChainComplex::from_integer({1, 1, 1}, {IntMatrix{{1}}, IntMatrix{{1}}}), ValidationError);
}

TEST(Gluing, TorusIntoAnnuli) {
  auto r = glue_check(complexes::torus2_cut());
  EXPECT_LT(r.residual, 1e-9);
}

TEST(Gluing, ThreeTorusAlongTwoTorus) {
  auto r = glue_check(complexes::torus3_cut());
  EXPECT_LT(r.residual, 1e-9);
}

TEST(Gluing, RandomHBasesOnTorusCut) {
  Rng rng(54);
  auto mv = mayer_vietoris(complexes::torus2_cut());
  for (int t = 0; t < 3; ++t) {
    auto S = mv;
    for (auto* X : {&S.A, &S.B, &S.C}) {
      auto hs = resolved_bases(*X);
      for (std::size_t q = 0; q < X->length(); ++q) X->h[q] = RatMatrix(hs[q] * random_rational_basis_change(hs[q].cols(), rng));
    }
    EXPECT_LT(glue_check(S).residual, 1e-9);
  }
}

TEST(Gluing, EmptyCutIsMultiplicative) {
  Rng rng(55);
  for (int t = 0; t < 20; ++t) {
    auto a = random_acyclic_complex(rng, 8), b = random_acyclic_complex(rng, 8);
    EXPECT_EQ(torsion(block_sum(a, b)).value, torsion(a).value * torsion(b).value);
  }
  auto T = cochain_complex(complexes::torus7());
  auto S = cochain_complex(complexes::sphere2());
  EXPECT_EQ(torsion(block_sum(T, S)).value, torsion(T).value * torsion(S).value);
}

TEST(HalfDensity, SolidTorusAndCylinder) {
  EXPECT_NEAR(torsion_half_density_integral(make_pair_with_boundary(complexes::solid_torus())), 1.0, 1e-12);
  EXPECT_NEAR(torsion_half_density_integral(make_pair_with_boundary(complexes::surface_times_interval(complexes::torus7()))),
              1.0, 1e-12);
  EXPECT_NEAR(torsion_half_density_integral(make_pair_with_boundary(complexes::handlebody2())), 1.0, 1e-12);
}

TEST(HalfDensity, ClosedLensSpace) {
  auto K = complexes::lens_space(2, 1);
  auto T = torsion(cochain_complex(K));
  EXPECT_EQ(T.value, Rat(1, 2));
  EXPECT_NEAR(closed_torsion_integral(K, cohomology(K)), std::sqrt(2.0), 1e-12);
}

TEST(HalfDensity, TwoPowerChiConstant) {
  EXPECT_DOUBLE_EQ(two_power_chi_factor(0), 1.0);
  EXPECT_DOUBLE_EQ(two_power_chi_factor(-2), 0.5);
  EXPECT_DOUBLE_EQ(two_power_chi_factor(4), 4.0);
}
