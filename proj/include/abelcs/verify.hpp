#pragma once

#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tqft.hpp"

namespace abelcs {

// ---- random data for property suites ----

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntMatrix random_unimodular(std::size_t g, Rng& rng, int steps = 4) {
  IntMatrix A = IntMatrix::identity(g);
  if (g == 0) return A;
  if (g < 2) {
    if (uniform(rng, 0, 1)) A(0, 0) = -1;
    return A;
  }
  for (int s = 0; s < steps; ++s) {
    std::size_t i = std::size_t(uniform(rng, 0, long(g) - 1)), j = std::size_t(uniform(rng, 0, long(g) - 2));
    if (j >= i) ++j;
    IntMatrix E = IntMatrix::identity(g);
    E(i, j) = uniform(rng, -1, 1);
    A = E * A;
  }
  return A;
}

inline IntMatrix random_symmetric(std::size_t g, Rng& rng, long bound = 2) {
  IntMatrix B(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) B(i, j) = B(j, i) = uniform(rng, -bound, bound);
  return B;
}

inline Token random_token(std::size_t g, Rng& rng) {
  switch (uniform(rng, 0, 2)) {
    case 0: return Token::alpha(random_unimodular(g, rng));
    case 1: return Token::beta(random_symmetric(g, rng));
    default: return Token::gamma(g);
  }
}

inline SpWord random_word(std::size_t g, Rng& rng, int length) {
  SpWord w;
  for (int i = 0; i < length; ++i) w.push_back(random_token(g, rng));
  return w;
}

inline IntMatrix random_symplectic(std::size_t g, Rng& rng, int length = 4) {
  return evaluate(random_word(g, rng, length), g);
}

inline Lagrangian random_lagrangian(std::size_t g, Rng& rng) {
  if (g == 0) return Lagrangian::standard(0);
  return act_on_lagrangian(random_symplectic(g, rng), Lagrangian::standard(g));
}

// Acyclic over Q: C^0 -> C^1 -> C^2 (-> C^3) with every coboundary of
// maximal rank, integer entries, at most max_cells cells.
inline BasedChainComplex random_acyclic_complex(Rng& rng, std::size_t max_cells = 12) {
  for (;;) {
    const bool four = uniform(rng, 0, 1);
    std::vector<std::size_t> r;  // ranks of the coboundaries
    r.push_back(std::size_t(uniform(rng, 1, 3)));
    r.push_back(std::size_t(uniform(rng, 1, 3)));
    if (four) r.push_back(std::size_t(uniform(rng, 1, 2)));
    std::vector<std::size_t> ranks{r[0]};
    for (std::size_t q = 1; q < r.size(); ++q) ranks.push_back(r[q - 1] + r[q]);
    ranks.push_back(r.back());
    std::size_t cells = 0;
    for (auto n : ranks) cells += n;
    if (cells > max_cells) continue;
    // d[q] = X_q Y_q with Y_q : C^q -> Q^{r_q} onto, X_q : Q^{r_q} -> C^{q+1}
    // injective and Y_{q+1} X_q = 0
    std::vector<IntMatrix> d;
    IntMatrix prevX;
    bool ok = true;
    for (std::size_t q = 0; q < r.size() && ok; ++q) {
      IntMatrix Y(r[q], ranks[q]);
      if (q == 0) {
        for (std::size_t i = 0; i < Y.rows(); ++i)
          for (std::size_t j = 0; j < Y.cols(); ++j) Y(i, j) = uniform(rng, -2, 2);
      } else {
        IntMatrix ann = kernel_basis(prevX.transpose()).transpose();  // rows kill im prevX
        IntMatrix R(r[q], ann.rows());
        for (std::size_t i = 0; i < R.rows(); ++i)
          for (std::size_t j = 0; j < R.cols(); ++j) R(i, j) = uniform(rng, -2, 2);
        Y = R * ann;
      }
      IntMatrix X(ranks[q + 1], r[q]);
      for (std::size_t i = 0; i < X.rows(); ++i)
        for (std::size_t j = 0; j < X.cols(); ++j) X(i, j) = uniform(rng, -2, 2);
      if (rank(Y) != r[q] || rank(X) != r[q]) ok = false;
      d.push_back(X * Y);
      prevX = X;
    }
    if (!ok) continue;
    auto C = BasedChainComplex::from_integer(ranks, d);
    bool acyclic = true;
    for (std::size_t q = 0; q < C.length(); ++q)
      if (C.betti(q) != 0) acyclic = false;
    if (acyclic) return C;
  }
}

// Random invertible rational change of basis.
inline RatMatrix random_rational_basis_change(std::size_t n, Rng& rng) {
  for (;;) {
    RatMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = Rat(uniform(rng, -3, 3), uniform(rng, 1, 4));
    if (n == 0 || determinant(A) != 0) return A;
  }
}

// ---- reports ----

struct Check {
  std::string name;
  bool pass = true;
  double residual = 0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(std::string name, bool ok, double residual = 0, std::string detail = {}) {
    checks.push_back({std::move(name), ok, residual, std::move(detail)});
  }
  void add_residual(std::string name, double residual, double tol, std::string detail = {}) {
    add(std::move(name), residual <= tol, residual, std::move(detail));
  }
};

inline nlohmann::ordered_json to_json(const SuiteReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["pass"] = r.pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["residual"] = c.residual;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    j["checks"].push_back(cj);
  }
  return j;
}

inline std::string to_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// ---- individual checks ----

inline double disjoint_union_residual(const ECobordism& a, const ECobordism& b) {
  StateVector lhs = tensor(assign_vector(a), assign_vector(b));
  StateVector rhs = assign_vector(disjoint_union(a, b), lhs.space);
  return max_abs_diff(lhs, rhs);
}

inline double orientation_residual(const ECobordism& X) {
  StateVector c = conjugate(assign_vector(X));
  StateVector r = assign_vector(reverse(X), c.space);
  return max_abs_diff(c, r);
}

// Z of the cylinder in L + L read as sum_q conj(v_q) (x) v_q.
inline double cylinder_residual(std::size_t g, const Lagrangian& L, long k) {
  ECobordism C = with_lagrangian(cylinder(g, k), lagrangian_sum({reflect(L), L}), 0);
  StateVector v = assign_vector(C, split_space({reflect(L), L}, {true, false}, k));
  double res = 0;
  for (std::size_t idx = 0; idx < v.amp.size(); ++idx) {
    auto q = v.space.label(idx);
    bool diag = true;
    for (std::size_t r = 0; r < g; ++r)
      if ((q[r] + q[g + r]) % k != 0) diag = false;
    res = std::max(res, std::abs(v.amp[idx] - cplx(diag ? 1.0 : 0.0)));
  }
  return res;
}

// Glues the Sigma of one cylinder to the -Sigma of another and compares
// Z_{(X, L, n)} with Tr Z_{(X^cut, L~, n~)}; the result must be the cylinder.
inline double composition_of_cylinders_residual(std::size_t g, long k, Rng& rng) {
  Lagrangian La = random_lagrangian(g, rng), Lb = random_lagrangian(g, rng), LS = random_lagrangian(g, rng);
  long n = uniform(rng, 0, 7);
  ECobordism cut = disjoint_union(cylinder(g, k), cylinder(g, k));
  cut = with_lagrangian(cut, lagrangian_sum({reflect(La), LS, reflect(LS), Lb}), n);
  auto r = glue(cut, 2, 1);
  StateVector full = assign_vector(cut, split_space({reflect(La), LS, reflect(LS), Lb}, {true, false, true, false}, k));
  StateVector traced = trace_pair(full, 2, 1);
  double res = max_abs_diff(assign_vector(r.X, traced.space), traced);
  if (!(r.X.LX() == diagonal_lagrangian(g))) return INFINITY;
  return std::max(res, max_abs_diff(r.X.Z, cylinder(g, k).Z));
}

inline double functoriality_residual(std::size_t g, long k, Rng& rng) {
  ECobordism X = with_lagrangian(handlebody(g, k), random_lagrangian(g, rng), uniform(rng, 0, 7));
  IntMatrix M = random_symplectic(g, rng);
  EMorphism2 b{M, uniform(rng, 0, 7), X.L, random_lagrangian(g, rng)};
  ECobordism Y = apply(EMorphism3{b}, X);
  HilbertSpace S(X.L, k), T(b.target, k);
  StateVector lhs = abelcs::apply(mapping_class_operator(b, S, T), assign_vector(X, S), T);
  StateVector rhs = assign_vector(Y, T);
  return max_abs_diff(lhs, rhs);
}

// ---- suites ----

inline SuiteReport verify_axioms(const std::vector<long>& levels, std::uint64_t seed, double tol = 1e-9) {
  SuiteReport rep{"axioms", {}};
  Rng rng(seed);
  for (long k : levels) {
    const std::string K = " k=" + std::to_string(k);
    for (std::size_t g = 0; g <= 3; ++g) {
      bool ok = true;
      std::size_t expect = 1;
      for (std::size_t i = 0; i < g; ++i) expect *= std::size_t(k);
      for (int t = 0; t < 5; ++t)
        if (HilbertSpace(random_lagrangian(g, rng), k).dim() != expect) ok = false;
      rep.add("dimension g=" + std::to_string(g) + K, ok);
    }
    {
      double res = 0;
      for (int t = 0; t < 3; ++t) {
        ECobordism a = with_lagrangian(handlebody(1, k), random_lagrangian(1, rng), uniform(rng, 0, 7));
        ECobordism b = with_lagrangian(cylinder(1, k), lagrangian_sum({random_lagrangian(1, rng), random_lagrangian(1, rng)}),
                                       uniform(rng, 0, 7));
        res = std::max(res, disjoint_union_residual(a, b));
      }
      rep.add_residual("disjoint union" + K, res, 1e-12);
    }
    {
      double res = 0;
      for (std::size_t g = 1; g <= 2; ++g) {
        res = std::max(res, orientation_residual(with_lagrangian(handlebody(g, k), random_lagrangian(g, rng), uniform(rng, 0, 7))));
        res = std::max(res, orientation_residual(with_lagrangian(
                                 cylinder(g, k), lagrangian_sum({random_lagrangian(g, rng), random_lagrangian(g, rng)}),
                                 uniform(rng, 0, 7))));
      }
      rep.add_residual("orientation" + K, res, 1e-12);
    }
    {
      double res = 0;
      for (std::size_t g = 1; g <= 2; ++g)
        for (int t = 0; t < 2; ++t) res = std::max(res, cylinder_residual(g, random_lagrangian(g, rng), k));
      rep.add_residual("cylinder" + K, res, tol);
    }
    {
      double res = 0;
      for (int t = 0; t < 3; ++t) res = std::max(res, composition_of_cylinders_residual(1, k, rng));
      rep.add_residual("gluing n-cut rule" + K, res, tol);
    }
    for (std::size_t g = 1; g <= 2; ++g) {
      Lagrangian L = random_lagrangian(g, rng);
      ECobordism C = with_lagrangian(cylinder(g, k), lagrangian_sum({reflect(L), L}), 0);
      ECobordism X = glue(C, 0, 1).X;
      double expect = std::pow(double(k), double(g));
      rep.add_residual("sigma x S1 g=" + std::to_string(g) + K, std::abs(closed_value(X) - cplx(expect)), tol);
    }
    {
      ECobordism H = handlebody(1, k);
      const Lagrangian L = Lagrangian::standard(1);
      ECobordism cut = with_lagrangian(disjoint_union(reverse(H), H), lagrangian_sum({reflect(L), L}), 0);
      ECobordism s3 = glue(cut, 0, 1, EMorphism2::on(L, Token::gamma(1).matrix())).X;
      ECobordism s2s1 = glue(cut, 0, 1, EMorphism2::identity(L)).X;
      rep.add_residual("S3 modulus" + K, std::abs(std::abs(closed_value(s3)) - 1 / std::sqrt(double(k))), tol,
                       "n=" + std::to_string(s3.n));
      rep.add_residual("S2 x S1" + K, std::abs(closed_value(s2s1) - cplx(1)), tol, "n=" + std::to_string(s2s1.n));
    }
    {
      double res = 0;
      for (std::size_t g = 1; g <= 2; ++g)
        for (int t = 0; t < 3; ++t) res = std::max(res, functoriality_residual(g, k, rng));
      rep.add_residual("functoriality" + K, res, tol);
    }
    {
      double res = 0;
      for (int t = 0; t < 4; ++t) {
        SurgeryWord w;
        w.genus = std::size_t(1 + t % 2);
        w.tokens = random_word(w.genus, rng, 3);
        for (std::size_t i = 0; i < w.tokens.size(); ++i) w.framings.push_back(uniform(rng, 0, 7));
        ClosedInvariant ci = closed_invariant(w, k);
        Lagrangian LS = random_lagrangian(w.genus, rng);
        ECobordism a = heegaard_gluing(w, k, Lagrangian::standard(w.genus));
        ECobordism b = heegaard_gluing(w, k, LS);
        res = std::max(res, std::abs(closed_value(a) - ci.value));
        res = std::max(res, std::abs(a.Z.amp[0] - b.Z.amp[0]));
        res = std::max(res, std::abs(ci.unframed() - a.Z.amp[0]));
      }
      rep.add_residual("heegaard gluing" + K, res, tol);
    }
    {
      bool ok = true;
      for (int t = 0; t < 5; ++t) {
        const std::size_t g = std::size_t(1 + t % 2);
        Lagrangian L0 = random_lagrangian(g, rng), L1 = random_lagrangian(g, rng), L2 = random_lagrangian(g, rng);
        EMorphism3 p1{{random_symplectic(g, rng), uniform(rng, 0, 7), L0, L1}};
        EMorphism3 p2{{random_symplectic(g, rng), uniform(rng, 0, 7), L1, L2}};
        ECobordism X = with_lagrangian(handlebody(g, k), L0, uniform(rng, 0, 7));
        ECobordism Y = apply(p1, X), Z2 = apply(p2, Y);
        EMorphism3 p21 = compose_e3(p2, p1);
        ECobordism Z1 = apply(p21, X);
        if (!framing_constraint_holds(p21, X, Z2) || Z1.n != Z2.n) ok = false;
        if (max_abs_diff(Z1.Z, Z2.Z) > tol) ok = false;
      }
      rep.add("e-3-morphism composition" + K, ok);
    }
  }
  return rep;
}

inline SuiteReport verify_cocycle(const std::vector<long>& levels, std::uint64_t seed) {
  SuiteReport rep{"cocycle", {}};
  for (long k : levels) {
    auto r = cocycle_check(k, 1, 200, seed);
    std::string detail;
    if (!r.pass) {
      std::ostringstream os;
      auto col = [&](const auto& m) {
        os << "(";
        for (std::size_t i = 0; i < m.rows(); ++i) os << (i ? "," : "") << m(i, 0);
        os << ")";
      };
      os << "witness a=";
      col(r.a);
      os << " l1=";
      col(r.l1);
      os << " l2=";
      col(r.l2);
      os << " defect=" << r.defect;
      detail = os.str();
    }
    rep.add("cocycle k=" + std::to_string(k), r.pass, r.pass ? 0.0 : 1.0, detail);
  }
  return rep;
}

inline SuiteReport verify_torsion(std::uint64_t seed, std::size_t complexes = 100) {
  SuiteReport rep{"torsion", {}};
  Rng rng(seed);
  double worst = 0;
  for (std::size_t t = 0; t < complexes; ++t) {
    auto C = random_acyclic_complex(rng);
    double a = torsion(C).to_double(), b = torsion_oracle(C);
    worst = std::max(worst, std::abs(a - b) / b);
  }
  rep.add_residual("random acyclic vs laplacian oracle", worst, 1e-12);
  {
    auto C = BasedChainComplex::from_integer({1, 1}, {IntMatrix{{2}}});
    Rat T = torsion(C).value;
    rep.add("x2 complex", T == 2, 0, to_string(T));
  }
  {
    auto cp = complexes::torus2_cut();
    auto mv = mayer_vietoris(cp);
    double res = glue_check(mv).residual;
    for (int t = 0; t < 3; ++t) {
      auto S = mv;
      for (auto* X : {&S.A, &S.B, &S.C}) {
        auto hs = resolved_bases(*X);
        for (std::size_t q = 0; q < X->length(); ++q)
          X->h[q] = RatMatrix(hs[q] * random_rational_basis_change(hs[q].cols(), rng));
      }
      res = std::max(res, glue_check(S).residual);
    }
    rep.add_residual("torus gluing formula", res, 1e-9);
  }
  {
    bool ok = true;
    for (auto K : {complexes::torus7(), complexes::sphere2(), complexes::solid_torus()}) {
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
        if (torsion(D).value != expect) ok = false;
      }
    }
    rep.add("density scaling law", ok);
  }
  return rep;
}

}  // namespace abelcs
