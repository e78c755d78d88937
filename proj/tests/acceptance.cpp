// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include <abelcs/complexes.hpp>
#include <abelcs/verify.hpp>

using namespace abelcs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

CMatrix scalar(std::size_t n, cplx z) {
  CMatrix m = CMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = z;
  return m;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---- 1 ----
Outcome dimension_law() {
  Rng rng(1);
  for (long k : {2, 4, 6})
    for (std::size_t g = 0; g <= 3; ++g) {
      std::size_t expect = 1;
      for (std::size_t i = 0; i < g; ++i) expect *= std::size_t(k);
      for (int t = 0; t < 5; ++t) {
        HilbertSpace S(random_lagrangian(g, rng), k);
        if (S.dim() != expect || S.leaves().size() != expect)
          return {false, "g=" + std::to_string(g) + " k=" + std::to_string(k)};
      }
    }
  return {true, "60 spaces"};
}

// ---- 2 ----
Outcome composition_anomaly() {
  Rng rng(2);
  double worst = 0;
  std::size_t n = 0;
  for (long k : {2, 4})
    for (std::size_t g : {1u, 2u})
      for (int t = 0; t < (g == 1 ? 200 : 50); ++t, ++n) {
        Lagrangian L1 = random_lagrangian(g, rng), L2 = random_lagrangian(g, rng), L3 = random_lagrangian(g, rng);
        CMatrix P = intertwiner(L1, L3, k).to_complex() * intertwiner(L3, L2, k).to_complex() *
                    intertwiner(L2, L1, k).to_complex();
        worst = std::max(worst, max_abs_diff(P, scalar(P.rows(), phase_to_complex(Rat(-maslov_index(L1, L2, L3), 4)))));
      }
  return {worst <= 1e-9, std::to_string(n) + " triples, max residual " + fmt(worst)};
}

// ---- 3 ----
Outcome generator_reproduction() {
  double worst = 0;
  for (long k : {2, 4, 6})
    for (std::size_t g : {1u, 2u}) {
      HilbertSpace S(Lagrangian::standard(g), k);
      CMatrix F = intertwiner(Lagrangian::dual_standard(g), Lagrangian::standard(g), k).to_complex();
      for (std::size_t i = 0; i < S.dim(); ++i)
        for (std::size_t j = 0; j < S.dim(); ++j) {
          auto q = S.label(j), q1 = S.label(i);
          long s = 0;
          for (std::size_t r = 0; r < g; ++r) s += q[r] * q1[r];
          cplx e = std::pow(double(k), -0.5 * double(g)) * std::exp(cplx(0, 2 * std::acos(-1.0) * double(s) / double(k)));
          worst = std::max(worst, std::abs(F(i, j) - e));
        }
    }
  bool exact = true;
  const Lagrangian L = Lagrangian::standard(1);
  for (long k : {2, 4, 6}) {
    HilbertSpace S(L, k);
    ExactOperator T(S.dim(), S.dim()), G(S.dim(), S.dim());
    G.scale_sq = Rat(1, k);
    for (long q = 0; q < k; ++q) {
      T.at(std::size_t(q), std::size_t(q)).push_back(reduce_phase(Rat(q * q, k)));
      for (long p = 0; p < k; ++p) G.at(std::size_t(p), std::size_t(q)).push_back(reduce_phase(Rat(2 * p * q, k)));
    }
    const IntMatrix Tm = Token::beta(IntMatrix{{1}}).matrix(), Sm = Token::gamma(1).matrix();
    exact = exact && generator_operator(Token::beta(IntMatrix{{1}}), S).exactly_equals(T) &&
            generator_operator(Token::gamma(1), S).exactly_equals(G) &&
            mapping_class_operator(Tm, 0, L, k).exactly_equals(T) && mapping_class_operator(Sm, 0, L, k).exactly_equals(G);
  }
  return {worst <= 1e-12 && exact, "gamma residual " + fmt(worst) + (exact ? ", U(T), U(S) exact" : ", U(T)/U(S) mismatch")};
}

// ---- 4 ----
int nearest_eighth_root(cplx z, double& res) {
  int best = 0;
  res = INFINITY;
  for (int j = 0; j < 8; ++j) {
    double d = std::abs(z - phase_to_complex(Rat(j, 4)));
    if (d < res) {
      res = d;
      best = j;
    }
  }
  return best;
}

Outcome strict_representation() {
  Rng rng(4);
  double worst = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t g = std::size_t(1 + t % 2);
    const long k = t % 4 < 2 ? 2 : 4;
    Lagrangian L = random_lagrangian(g, rng);
    HilbertSpace S(L, k);
    EMorphism2 x = EMorphism2::on(L, evaluate(random_word(g, rng, 3), g), uniform(rng, 0, 7));
    EMorphism2 y = EMorphism2::on(L, evaluate(random_word(g, rng, 3), g), uniform(rng, 0, 7));
    CMatrix lhs = mapping_class_operator(x, S, S).to_complex() * mapping_class_operator(y, S, S).to_complex();
    worst = std::max(worst, max_abs_diff(lhs, mapping_class_operator(compose(x, y), S, S).to_complex()));
  }
  // relations: the accumulated integer must equal the observed 8th root
  const Lagrangian L = Lagrangian::standard(1);
  const EMorphism2 s = EMorphism2::on(L, Token::gamma(1).matrix()), tt = EMorphism2::on(L, Token::beta(IntMatrix{{1}}).matrix());
  bool phases = true;
  std::string seen;
  for (long k : {2, 4, 6, 8}) {
    HilbertSpace S(L, k);
    for (auto word : {std::vector<EMorphism2>{s, s, s, s}, std::vector<EMorphism2>{s, tt, s, tt, s, tt}}) {
      EMorphism2 acc = EMorphism2::identity(L);
      ExactOperator U = ExactOperator::identity(S.dim());
      for (auto& x : word) {
        acc = compose(acc, x);
        U = U * mapping_class_operator(x, S, S);
      }
      CMatrix u = U.to_complex();
      double res;
      int j = nearest_eighth_root(u(0, 0), res);
      double off = max_abs_diff(u, scalar(u.rows(), u(0, 0)));
      if (acc.M != IntMatrix::identity(2) || j != acc.m || res > 1e-9 || off > 1e-9) phases = false;
      seen += (seen.empty() ? "" : ",") + std::to_string(j);
    }
  }
  return {worst <= 1e-9 && phases, "500 pairs, max residual " + fmt(worst) + "; S^4,(ST)^3 phases e^{i pi j/4}, j=" + seen};
}

// ---- 5 ----
Outcome maslov_properties() {
  std::vector<Lagrangian> lines;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) {
      if (std::gcd(a, b) != 1) continue;
      if (a < 0 || (a == 0 && b < 0)) continue;  // one sign per line
      IntMatrix m(2, 1);
      m(0, 0) = a;
      m(1, 0) = b;
      lines.push_back(Lagrangian::from_gens(m));
    }
  const IntMatrix S = Token::gamma(1).matrix(), T = Token::beta(IntMatrix{{1}}).matrix();
  std::size_t triples = 0;
  bool ok = true;
  for (auto& a : lines)
    for (auto& b : lines)
      for (auto& c : lines) {
        ++triples;
        int t = maslov_index(a, b, c);
        ok = ok && maslov_index(b, a, c) == -t && maslov_index(a, c, b) == -t && maslov_index(c, b, a) == -t &&
             maslov_index(b, c, a) == t;
        ok = ok && maslov_index(act_on_lagrangian(S, a), act_on_lagrangian(S, b), act_on_lagrangian(S, c)) == t &&
             maslov_index(act_on_lagrangian(T, a), act_on_lagrangian(T, b), act_on_lagrangian(T, c)) == t;
        ok = ok && maslov_index(a, a, c) == 0;
        for (auto& d : lines)
          ok = ok && t - maslov_index(a, b, d) + maslov_index(a, c, d) - maslov_index(b, c, d) == 0;
      }
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Lagrangian a = random_lagrangian(2, rng), b = random_lagrangian(2, rng), c = random_lagrangian(2, rng),
               d = random_lagrangian(2, rng);
    IntMatrix M = random_symplectic(2, rng);
    int t = maslov_index(a, b, c);
    ok = ok && maslov_index(b, a, c) == -t && maslov_index(a, c, b) == -t && maslov_index(c, b, a) == -t;
    ok = ok && maslov_index(act_on_lagrangian(M, a), act_on_lagrangian(M, b), act_on_lagrangian(M, c)) == t;
    ok = ok && t - maslov_index(a, b, d) + maslov_index(a, c, d) - maslov_index(b, c, d) == 0;
    ok = ok && maslov_index(a, a, b) == 0;
  }
  return {ok, std::to_string(lines.size()) + " lines, " + std::to_string(triples) + " g=1 triples, 200 g=2 triples"};
}

// ---- 6 ----
Outcome axiom_suite() {
  auto r = verify_axioms({2, 4}, 0);
  std::string failed;
  for (auto& c : r.checks)
    if (!c.pass) failed += " [" + c.name + "]";
  return {r.pass(), std::to_string(r.checks.size()) + " checks" + failed};
}

// ---- 7 ----
Outcome lens_spaces() {
  double worst_abs = 0, worst_direct = 0;
  for (long p : {2, 3, 4, 5}) {
    auto K = complexes::lens_space(int(p), 1);
    auto prof = cohomology(K);
    const double ti = closed_torsion_integral(K, prof);
    for (long k : {2, 4}) {
      auto ci = closed_invariant(lens_word(p), k);
      worst_abs = std::max(worst_abs, std::abs(std::abs(ci.value) - lens_gauss_oracle(p, k)));
      cplx direct = direct_closed_formula(prof, cs_values_from(ci, k), ti, k);
      worst_direct = std::max(worst_direct, std::abs(direct - ci.unframed()));
    }
  }
  return {worst_abs <= 1e-9 && worst_direct <= 1e-9,
          "gauss residual " + fmt(worst_abs) + ", direct residual " + fmt(worst_direct)};
}

// ---- 8 ----
Outcome torsion_suite() {
  auto r = verify_torsion(0, 100);
  std::string d;
  for (auto& c : r.checks) d += (d.empty() ? "" : "; ") + c.name + (c.pass ? " ok" : " FAILED");
  return {r.pass(), d};
}

// ---- 9 ----
Outcome level_evenness() {
  bool ok = true;
  std::string d;
  for (long k = 1; k <= 10; ++k) {
    auto r = cocycle_check(k);
    if (k % 2 == 0) {
      ok = ok && r.pass;
    } else {
      // a witness: the defect e^{i pi k w(l1, l2)} is -1
      Rat w = omega(to_rat(r.l1), to_rat(r.l2))(0, 0);
      ok = ok && !r.pass && r.defect == 1 && boost::multiprecision::numerator(w) % 2 != 0;
    }
  }
  return {ok, "even k <= 10 pass, odd k <= 9 each give a witness"};
}

// ---- 10 ----
Outcome homology_engine() {
  std::vector<std::pair<std::string, SimplicialComplex>> pieces = {
      {"solid torus", complexes::solid_torus()},
      {"genus-2 handlebody", complexes::handlebody2()},
      {"T2 x I", complexes::surface_times_interval(complexes::torus7())},
      {"lens piece (solid torus, 5 layers)", complexes::solid_torus(5)},
      {"lens piece (solid torus, 6 layers)", complexes::solid_torus(6)},
  };
  bool ok = true;
  std::string bad;
  for (auto& [name, K] : pieces) {
    auto P = make_pair_with_boundary(K);
    auto bl = boundary_lagrangian(P);
    auto prof = cohomology(P);
    bool here = bool(is_lagrangian(bl.L.gens)) && lefschetz_identity_holds(prof) && torsion_duality_holds(prof);
    if (!here) bad += " [" + name + "]";
    ok = ok && here;
  }
  ok = ok && boundary_lagrangian(make_pair_with_boundary(pieces[2].second)).L == diagonal_lagrangian(1);
  return {ok, std::to_string(pieces.size()) + " pairs" + bad};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"dimension law", dimension_law},
      {"composition-law anomaly", composition_anomaly},
      {"generator reproduction", generator_reproduction},
      {"strict extended representation", strict_representation},
      {"Maslov index properties", maslov_properties},
      {"TQFT axiom suite", axiom_suite},
      {"lens-space cross-engine equality", lens_spaces},
      {"torsion engine", torsion_suite},
      {"evenness of the level", level_evenness},
      {"homology engine", homology_engine},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), sec,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
