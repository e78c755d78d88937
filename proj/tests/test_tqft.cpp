#include <gtest/gtest.h>

#include <abelcs/complexes.hpp>
#include <abelcs/verify.hpp>

using namespace abelcs;

namespace {

cplx gauss_sum(long p, long k) {
  cplx s = 0;
  for (long q = 0; q < k; ++q) s += std::exp(cplx(0, std::acos(-1.0) * double(p * q * q) / double(k)));
  return s;
}

ECobordism two_solid_tori(long k) {
  ECobordism H = handlebody(1, k);
  const Lagrangian L = Lagrangian::standard(1);
  return with_lagrangian(disjoint_union(reverse(H), H), lagrangian_sum({reflect(L), L}), 0);
}

}  // namespace

TEST(Blocks, SolidTorusIsUnitVector) {
  for (long k : {2, 4}) {
    auto X = from_simplicial(make_pair_with_boundary(complexes::solid_torus()), k);
    StateVector v = assign_vector(X);
    ASSERT_EQ(v.amp.size(), std::size_t(k));
    EXPECT_NEAR(std::abs(v.amp[0] - cplx(1)), 0, 1e-12);
    for (std::size_t q = 1; q < v.amp.size(); ++q) EXPECT_EQ(v.amp[q], cplx(0));
  }
}

TEST(Blocks, HandlebodyMatchesSimplicialEvaluation) {
  for (long k : {2, 4}) {
    auto X = from_simplicial(make_pair_with_boundary(complexes::handlebody2()), k);
    auto H = handlebody(2, k);
    EXPECT_EQ(X.LX(), H.LX());
    ASSERT_EQ(X.Z.amp.size(), std::size_t(k * k));
    EXPECT_NEAR(std::abs(X.Z.amp[0] - H.Z.amp[0]), 0, 1e-12);
    EXPECT_NEAR(H.Z.amp[0].real(), std::pow(double(k), 0.25), 1e-12);
  }
}

TEST(Blocks, CylinderAmplitude) {
  auto C = cylinder(1, 2);
  EXPECT_NEAR(std::abs(C.Z.amp[0] - cplx(std::sqrt(2.0))), 0, 1e-15);
  for (std::size_t q = 1; q < C.Z.amp.size(); ++q) EXPECT_EQ(C.Z.amp[q], cplx(0));
  auto S = from_simplicial(make_pair_with_boundary(complexes::surface_times_interval(complexes::torus7())), 4);
  EXPECT_EQ(S.LX(), cylinder(1, 4).LX());
  EXPECT_NEAR(std::abs(S.Z.amp[0] - cylinder(1, 4).Z.amp[0]), 0, 1e-12);
}

TEST(Blocks, TorsionInH2IsReported) {
  EXPECT_THROW(from_simplicial(make_pair_with_boundary(complexes::lens_space(2, 1)), 2), ValidationError);
}

TEST(Axioms, CylinderIsIdentity) {
  Rng rng(61);
  for (long k : {2, 4})
    for (std::size_t g : {1u, 2u})
      for (int t = 0; t < 3; ++t) EXPECT_LT(cylinder_residual(g, random_lagrangian(g, rng), k), 1e-9);
}

TEST(Axioms, DisjointUnionAndOrientation) {
  Rng rng(62);
  for (long k : {2, 4})
    for (int t = 0; t < 4; ++t) {
      const std::size_t g = std::size_t(1 + t % 2);
      ECobordism a = with_lagrangian(handlebody(g, k), random_lagrangian(g, rng), uniform(rng, 0, 7));
      ECobordism b = with_lagrangian(cylinder(1, k), lagrangian_sum({random_lagrangian(1, rng), random_lagrangian(1, rng)}),
                                     uniform(rng, 0, 7));
      EXPECT_LT(disjoint_union_residual(a, b), 1e-12);
      EXPECT_LT(orientation_residual(a), 1e-12);
      EXPECT_LT(orientation_residual(b), 1e-12);
    }
}

TEST(Axioms, Functoriality) {
  Rng rng(63);
  for (long k : {2, 4})
    for (int t = 0; t < 6; ++t) EXPECT_LT(functoriality_residual(std::size_t(1 + t % 2), k, rng), 1e-9);
}

TEST(Gluing, SurfaceTimesCircle) {
  Rng rng(64);
  for (long k : {2, 4})
    for (std::size_t g : {1u, 2u}) {
      Lagrangian L = random_lagrangian(g, rng);
      auto X = glue(with_lagrangian(cylinder(g, k), lagrangian_sum({reflect(L), L}), 0), 0, 1).X;
      EXPECT_NEAR(std::abs(closed_value(X) - cplx(std::pow(double(k), double(g)))), 0, 1e-9);
    }
}

TEST(Gluing, TwoSolidToriBySAndIdentity) {
  for (long k : {2, 4, 6}) {
    const Lagrangian L = Lagrangian::standard(1);
    auto s3 = glue(two_solid_tori(k), 0, 1, EMorphism2::on(L, Token::gamma(1).matrix())).X;
    EXPECT_NEAR(std::abs(closed_value(s3)), 1 / std::sqrt(double(k)), 1e-9);
    auto s2s1 = glue(two_solid_tori(k), 0, 1, EMorphism2::identity(L)).X;
    EXPECT_NEAR(std::abs(closed_value(s2s1) - cplx(1)), 0, 1e-9);
  }
}

TEST(Gluing, CompositionOfCylinders) {
  Rng rng(65);
  for (long k : {2, 4})
    for (int t = 0; t < 3; ++t) EXPECT_LT(composition_of_cylinders_residual(1, k, rng), 1e-9);
}

TEST(Gluing, RejectsBadFactorization) {
  ECobordism C = cylinder(1, 2);
  EXPECT_THROW(glue(C, 0, 0), ValidationError);
  // L_Delta does not split along the two boundary copies
  EXPECT_THROW(glue(C, 0, 1), ValidationError);
  ECobordism D = disjoint_union(handlebody(1, 2), handlebody(2, 2));
  EXPECT_THROW(glue(D, 0, 1), ValidationError);
}

TEST(ClosedInvariant, SphereAndS2xS1) {
  for (long k : {2, 4}) {
    SurgeryWord s;
    s.tokens = {Token::gamma(1)};
    auto ci = closed_invariant(s, k);
    EXPECT_NEAR(std::abs(ci.value), 1 / std::sqrt(double(k)), 1e-12);
    EXPECT_EQ(ci.n, 0);
    SurgeryWord id;
    auto ce = closed_invariant(id, k);
    EXPECT_NEAR(std::abs(ce.value - cplx(1)), 0, 1e-12);
  }
}

TEST(ClosedInvariant, LensSpacesAgainstGaussSums) {
  for (long k : {2, 4, 6})
    for (long p = 1; p <= 6; ++p) {
      auto ci = closed_invariant(lens_word(p), k);
      EXPECT_NEAR(std::abs(ci.value), std::abs(gauss_sum(p, k)) / double(k), 1e-12) << p << " " << k;
      EXPECT_NEAR(std::abs(ci.value), lens_gauss_oracle(p, k), 1e-12);
    }
}

TEST(ClosedInvariant, GluingEngineAgreesAndIgnoresCutPolarization) {
  Rng rng(66);
  for (long k : {2, 4})
    for (int t = 0; t < 4; ++t) {
      SurgeryWord w;
      w.genus = std::size_t(1 + t % 2);
      w.tokens = random_word(w.genus, rng, 3);
      for (std::size_t i = 0; i < w.tokens.size(); ++i) w.framings.push_back(uniform(rng, 0, 7));
      auto ci = closed_invariant(w, k);
      auto a = heegaard_gluing(w, k, Lagrangian::standard(w.genus));
      auto b = heegaard_gluing(w, k, random_lagrangian(w.genus, rng));
      EXPECT_EQ(a.n, ci.n);
      EXPECT_LT(std::abs(closed_value(a) - ci.value), 1e-9);
      EXPECT_LT(std::abs(a.Z.amp[0] - b.Z.amp[0]), 1e-9);
    }
}

TEST(MappingTorus, WorkedExamples) {
  for (long k : {2, 4, 6}) {
    auto id = mapping_torus_invariant(IntMatrix::identity(4), 0, k);
    EXPECT_NEAR(std::abs(id.value - cplx(double(k * k))), 0, 1e-9);
    auto T = mapping_torus_invariant(Token::beta(IntMatrix{{1}}).matrix(), 0, k);
    EXPECT_NEAR(std::abs(T.value - gauss_sum(1, k)), 0, 1e-9);
    IntMatrix S = Token::gamma(1).matrix();
    auto c = mapping_torus_invariant(S * S, 0, k);
    // q -> -q fixes q = 0 and q = k/2
    EXPECT_NEAR(std::abs(c.value), 2.0, 1e-9);
  }
}

TEST(MappingTorus, GluingEngineAgrees) {
  Rng rng(67);
  for (long k : {2, 4})
    for (int t = 0; t < 4; ++t) {
      const std::size_t g = std::size_t(1 + t % 2);
      IntMatrix M = random_symplectic(g, rng);
      long m = uniform(rng, 0, 7);
      auto mt = mapping_torus_invariant(M, m, k);
      auto X = mapping_torus_gluing(M, m, k, Lagrangian::standard(g));
      EXPECT_EQ(X.n, mt.n);
      EXPECT_LT(std::abs(closed_value(X) - mt.value), 1e-9);
      // another cut polarization with n~ = 0 glues a different e-structure;
      // the unframed amplitude does not change
      Lagrangian L = random_lagrangian(g, rng);
      auto Y = mapping_torus_gluing(M, m, k, L);
      EXPECT_EQ(Y.n, mod8(m + maslov_index(lagrangian_sum({reflect(L), L}), diagonal_lagrangian(g), graph_lagrangian(M))));
      EXPECT_LT(std::abs(Y.Z.amp[0] - mt.unframed()), 1e-9);
    }
}

TEST(DirectFormula, SphereAndS2xS1) {
  for (long k : {2, 4}) {
    auto s3 = cohomology(complexes::sphere3());
    EXPECT_NEAR(std::abs(direct_closed_formula(s3, {Rat(0)}, 1.0, k) - cplx(1 / std::sqrt(double(k)))), 0, 1e-12);
    auto K = complexes::s2_times_s1();
    auto p = cohomology(K);
    EXPECT_NEAR(std::abs(direct_closed_formula(p, {Rat(0)}, closed_torsion_integral(K, p), k) - cplx(1)), 0, 1e-12);
  }
  EXPECT_THROW(direct_closed_formula(cohomology(complexes::sphere3()), {Rat(0), Rat(0)}, 1.0, 2), ValidationError);
}

TEST(DirectFormula, LensSpaceMatchesClosedInvariant) {
  for (long p : {2, 3}) {
    auto K = complexes::lens_space(int(p), 1);
    auto prof = cohomology(K);
    const double ti = closed_torsion_integral(K, prof);
    for (long k : {2, 4}) {
      auto ci = closed_invariant(lens_word(p), k);
      // count identity: components of the leaf intersection = |Tors H^2|
      EXPECT_EQ(Int(ci.components), prof.absolute.torsion_order(2));
      cplx direct = direct_closed_formula(prof, cs_values_from(ci, k), ti, k);
      EXPECT_LT(std::abs(direct - ci.unframed()), 1e-9) << p << " " << k;
    }
  }
}

TEST(EMorphisms, CompositionIdentityInverseAssociativity) {
  Rng rng(68);
  for (int t = 0; t < 20; ++t) {
    const std::size_t g = std::size_t(1 + t % 2);
    Lagrangian a = random_lagrangian(g, rng), b = random_lagrangian(g, rng), c = random_lagrangian(g, rng),
               d = random_lagrangian(g, rng);
    EMorphism3 x{{random_symplectic(g, rng), uniform(rng, 0, 7), a, b}};
    EMorphism3 y{{random_symplectic(g, rng), uniform(rng, 0, 7), b, c}};
    EMorphism3 z{{random_symplectic(g, rng), uniform(rng, 0, 7), c, d}};
    EMorphism3 xi = compose_e3(x, EMorphism3{EMorphism2::identity(a)});
    EXPECT_EQ(xi.boundary.M, x.boundary.M);
    EXPECT_EQ(xi.boundary.m, x.boundary.m);
    EMorphism3 l = compose_e3(z, compose_e3(y, x)), r = compose_e3(compose_e3(z, y), x);
    EXPECT_EQ(l.boundary.M, r.boundary.M);
    EXPECT_EQ(l.boundary.m, r.boundary.m);
    EMorphism2 e = compose(inverse(x.boundary), x.boundary);
    EXPECT_EQ(e.M, IntMatrix::identity(2 * g));
    // the tau term is tau(a, h^{-1} b, a) = 0, so (h^{-1}, -m) is an exact inverse
    EXPECT_EQ(e.m, 0);
    ECobordism X = with_lagrangian(handlebody(g, 2), a, uniform(rng, 0, 7));
    ECobordism Y = apply(x, X);
    EXPECT_TRUE(framing_constraint_holds(x, X, Y));
  }
}
