#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "complexes.hpp"
#include "homology.hpp"

namespace abelcs {

// Cochain complex C^0 -> C^1 -> ... with the standard bases of Q^{n_q} as
// preferred bases. h[q], when set, holds cocycles whose classes form a basis
// of H^q.
struct BasedChainComplex {
  std::vector<std::size_t> ranks;
  std::vector<RatMatrix> d;  // d[q] : C^q -> C^{q+1}, ranks[q+1] x ranks[q]
  std::vector<std::optional<RatMatrix>> h;

  std::size_t length() const { return ranks.size(); }

  static BasedChainComplex from_integer(const std::vector<std::size_t>& ranks, const std::vector<IntMatrix>& d) {
    BasedChainComplex C;
    C.ranks = ranks;
    for (auto& m : d) C.d.push_back(to_rat(m));
    C.h.assign(ranks.size(), std::nullopt);
    C.validate();
    return C;
  }

  void validate() const {
    if (ranks.empty()) return;
    if (d.size() + 1 != ranks.size()) throw ValidationError("complex: need one coboundary per consecutive pair");
    for (std::size_t q = 0; q < d.size(); ++q)
      if (d[q].rows() != ranks[q + 1] || d[q].cols() != ranks[q])
        throw ValidationError("complex: coboundary " + std::to_string(q) + " has wrong shape");
    for (std::size_t q = 0; q + 1 < d.size(); ++q)
      if (!(d[q + 1] * d[q]).is_zero()) throw ValidationError("complex: d o d is not zero");
    if (h.size() != ranks.size()) throw ValidationError("complex: basis list has wrong length");
  }

  bool integral() const {
    for (auto& m : d)
      if (!to_int(m)) return false;
    return true;
  }

  RatMatrix d_in(std::size_t q) const { return q ? d[q - 1] : RatMatrix(ranks[0], 0); }
  RatMatrix d_out(std::size_t q) const { return q < d.size() ? d[q] : RatMatrix(0, ranks[q]); }

  std::size_t betti(std::size_t q) const {
    return ranks[q] - abelcs::rank(d_out(q)) - (q ? abelcs::rank(d_in(q)) : 0);
  }

  // Pads with zero modules up to the given number of degrees.
  BasedChainComplex padded(std::size_t n) const {
    BasedChainComplex C = *this;
    while (C.ranks.size() < n) {
      C.d.push_back(RatMatrix(0, C.ranks.back()));
      C.ranks.push_back(0);
      C.h.push_back(std::nullopt);
    }
    return C;
  }
};

inline BasedChainComplex cochain_complex(const SimplicialComplex& K, const SimplicialComplex* A = nullptr) {
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> d;
  for (std::size_t q = 0; q < 4; ++q) ranks.push_back(K.kept(q, A).size());
  for (std::size_t q = 0; q < 3; ++q) d.push_back(K.coboundary_restricted(q, A));
  return BasedChainComplex::from_integer(ranks, d);
}

// Cocycles representing an integral basis of H^q / torsion.
inline RatMatrix integer_cohomology_basis(const BasedChainComplex& C, std::size_t q) {
  auto dp = to_int(C.d_in(q)), dn = to_int(C.d_out(q));
  if (!dp || !dn) throw ValidationError("integer cohomology basis needs an integral complex");
  return to_rat(integral_cohomology(*dp, *dn, C.ranks[q]).h);
}

struct TorsionDensity {
  Rat value;
  std::vector<RatMatrix> bases;  // the h^(q) the value refers to
  double to_double() const { return abelcs::to_double(value); }
};

namespace detail {

// standard basis vectors at the pivot columns of rref(d)
inline RatMatrix image_section(const RatMatrix& d) {
  RatMatrix r = d;
  auto piv = rref(r);
  RatMatrix b(d.cols(), piv.size());
  for (std::size_t j = 0; j < piv.size(); ++j) b(piv[j], j) = 1;
  return b;
}

}  // namespace detail

inline std::vector<RatMatrix> resolved_bases(const BasedChainComplex& C) {
  C.validate();
  std::vector<RatMatrix> hs;
  for (std::size_t q = 0; q < C.length(); ++q) {
    const std::size_t beta = C.betti(q);
    RatMatrix h;
    if (C.h[q]) {
      h = *C.h[q];
      if (h.rows() != C.ranks[q] || h.cols() != beta)
        throw ValidationError("supplied h basis in degree " + std::to_string(q) + " has wrong size");
      if (!(C.d_out(q) * h).is_zero())
        throw ValidationError("supplied h basis in degree " + std::to_string(q) + " is not made of cocycles");
    } else if (beta == 0) {
      h = RatMatrix(C.ranks[q], 0);
    } else {
      h = integer_cohomology_basis(C, q);
    }
    hs.push_back(h);
  }
  return hs;
}

// T = prod_q |det D_q|^{(-1)^{q+1}}, D_q = [d b^(q-1) | b^(q) | h^(q)].
inline TorsionDensity torsion(const BasedChainComplex& C) {
  TorsionDensity T;
  T.bases = resolved_bases(C);
  T.value = 1;
  RatMatrix prev_b;
  for (std::size_t q = 0; q < C.length(); ++q) {
    RatMatrix b = detail::image_section(C.d_out(q));
    RatMatrix lift = q ? RatMatrix(C.d_in(q) * prev_b) : RatMatrix(C.ranks[0], 0);
    RatMatrix D = hcat(hcat(lift, b), T.bases[q]);
    if (D.rows() != D.cols()) throw std::logic_error("torsion: base-change matrix is not square");
    Rat det = D.rows() ? determinant(D) : Rat(1);
    if (det == 0) throw ValidationError("supplied h basis in degree " + std::to_string(q) + " is not independent");
    if (det < 0) det = -det;
    T.value = q % 2 ? Rat(T.value * det) : Rat(T.value / det);
    prev_b = b;
  }
  return T;
}

// Independent evaluation through combinatorial Laplacians: the
// alternating product of pseudo-determinants, times the volumes of the h
// bases against orthonormal harmonic bases.
inline double torsion_oracle(const BasedChainComplex& C) {
  using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  auto hs = resolved_bases(C);
  auto dense = [](const RatMatrix& m) {
    MatrixL e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).convert_to<long double>();
    return e;
  };
  long double log_t = 0;
  for (std::size_t q = 0; q < C.length(); ++q) {
    const Eigen::Index n = Eigen::Index(C.ranks[q]);
    if (n == 0) continue;
    MatrixL din = dense(C.d_in(q)), dout = dense(C.d_out(q));
    MatrixL lap = MatrixL::Zero(n, n);
    if (din.cols()) lap += din * din.transpose();
    if (dout.rows()) lap += dout.transpose() * dout;
    Eigen::SelfAdjointEigenSolver<MatrixL> es(lap);
    const auto& ev = es.eigenvalues();
    const long double tol = 1e-9 * std::max(1.0L, ev.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> harm;
    long double logdet = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (ev(i) > tol)
        logdet += std::log(ev(i));
      else
        harm.push_back(i);
    }
    const long double sgn = q % 2 ? 1.0L : -1.0L;
    log_t += sgn * 0.5L * (long double)q * logdet;
    if (harm.size() != hs[q].cols()) throw std::logic_error("torsion_oracle: harmonic dimension mismatch");
    if (!harm.empty()) {
      MatrixL H(n, Eigen::Index(harm.size()));
      for (std::size_t c = 0; c < harm.size(); ++c) H.col(Eigen::Index(c)) = es.eigenvectors().col(harm[c]);
      long double vol = std::abs((H.transpose() * dense(hs[q])).determinant());
      log_t += sgn * std::log(vol);
    }
  }
  return double(std::exp(log_t));
}

// ---- short exact sequences and their long exact cohomology sequence ----

// 0 -> A --i--> B --j--> C -> 0, degreewise.
struct ShortExactSequence {
  BasedChainComplex A, B, C;
  std::vector<RatMatrix> i, j;
};

struct LESReport {
  Rat T_A, T_B, T_C, T_H;
  std::size_t degrees = 0;
  Rat residual;  // |T_A - T_B / (T_C T_H)| / T_A
  double residual_double() const { return to_double(residual); }
};

namespace detail {

// class coordinates of a cocycle z in the basis h (D^{-1} z, last beta entries)
inline RatMatrix class_coordinates(const BasedChainComplex& C, std::size_t q, const RatMatrix& h,
                                   const RatMatrix& z) {
  RatMatrix b = image_section(C.d_out(q));
  RatMatrix lift = q ? RatMatrix(C.d_in(q) * image_section(C.d_in(q))) : RatMatrix(C.ranks[0], 0);
  RatMatrix D = hcat(hcat(lift, b), h);
  auto x = solve_rational(D, z);
  if (!x) throw std::logic_error("class_coordinates: not solvable");
  const std::size_t beta = h.cols();
  RatMatrix tail = x->block(x->rows() - beta, 0, beta, x->cols());
  RatMatrix head = x->block(lift.cols(), 0, b.cols(), x->cols());
  if (!head.is_zero()) throw std::logic_error("class_coordinates: vector is not a cocycle");
  return tail;
}

}  // namespace detail

inline LESReport les_torsion(const ShortExactSequence& S0) {
  std::size_t n = std::max({S0.A.length(), S0.B.length(), S0.C.length()});
  BasedChainComplex A = S0.A.padded(n), B = S0.B.padded(n), C = S0.C.padded(n);
  auto pad_maps = [&](std::vector<RatMatrix> m, const BasedChainComplex& src, const BasedChainComplex& dst) {
    while (m.size() < n) m.push_back(RatMatrix(dst.ranks[m.size()], src.ranks[m.size()]));
    return m;
  };
  auto i = pad_maps(S0.i, A, B), j = pad_maps(S0.j, B, C);
  for (std::size_t q = 0; q < n; ++q) {
    if (i[q].rows() != B.ranks[q] || i[q].cols() != A.ranks[q] || j[q].rows() != C.ranks[q] ||
        j[q].cols() != B.ranks[q])
      throw ValidationError("exact sequence maps have wrong shape in degree " + std::to_string(q));
    if (!(j[q] * i[q]).is_zero()) throw ValidationError("exact sequence: j o i is not zero");
    if (abelcs::rank(i[q]) != A.ranks[q] || abelcs::rank(j[q]) != C.ranks[q] ||
        A.ranks[q] + C.ranks[q] != B.ranks[q])
      throw ValidationError("determinant lines do not match: sequence is not short exact");
    if (q + 1 < n) {
      if (!(B.d[q] * i[q] - i[q + 1] * A.d[q]).is_zero()) throw ValidationError("i is not a cochain map");
      if (!(C.d[q] * j[q] - j[q + 1] * B.d[q]).is_zero()) throw ValidationError("j is not a cochain map");
    }
  }
  LESReport rep;
  auto tA = torsion(A), tB = torsion(B), tC = torsion(C);
  rep.T_A = tA.value;
  rep.T_B = tB.value;
  rep.T_C = tC.value;

  // H^q(A) at degree 3q, H^q(B) at 3q+1, H^q(C) at 3q+2
  const std::size_t N = 3 * n;
  std::vector<std::size_t> ranks(N);
  std::vector<RatMatrix> d(N - 1);
  for (std::size_t q = 0; q < n; ++q) {
    ranks[3 * q] = tA.bases[q].cols();
    ranks[3 * q + 1] = tB.bases[q].cols();
    ranks[3 * q + 2] = tC.bases[q].cols();
  }
  for (std::size_t q = 0; q < n; ++q) {
    d[3 * q] = detail::class_coordinates(B, q, tB.bases[q], i[q] * tA.bases[q]);
    d[3 * q + 1] = detail::class_coordinates(C, q, tC.bases[q], j[q] * tB.bases[q]);
    if (3 * q + 2 < N - 1) {
      // connecting map: lift through j, apply d, pull back through i
      const RatMatrix& z = tC.bases[q];
      RatMatrix out(ranks[3 * q + 3], z.cols());
      for (std::size_t c = 0; c < z.cols(); ++c) {
        auto lift = solve_rational(j[q], z.col(c));
        if (!lift) throw std::logic_error("les: j is not surjective");
        RatMatrix db = B.d[q] * *lift;
        auto x = solve_rational(i[q + 1], db);
        if (!x) throw std::logic_error("les: coboundary of the lift is not in the image of i");
        out.set_block(0, c, detail::class_coordinates(A, q + 1, tA.bases[q + 1], *x));
      }
      d[3 * q + 2] = out;
    }
  }
  BasedChainComplex H;
  H.ranks = ranks;
  H.d = d;
  H.h.assign(N, std::nullopt);
  H.validate();
  for (std::size_t q = 0; q < N; ++q)
    if (H.betti(q) != 0) throw std::logic_error("les: long exact sequence is not exact");
  rep.T_H = torsion(H).value;
  rep.degrees = n;
  Rat diff = rep.T_A - rep.T_B / (rep.T_C * rep.T_H);
  if (diff < 0) diff = -diff;
  rep.residual = diff / rep.T_A;
  return rep;
}

// ---- simplicial bookkeeping ----

namespace detail {

inline int permutation_sign(std::vector<int> v) {
  int s = 1;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b)
      if (v[a] > v[b]) s = -s;
  return s;
}

// Pullback along a simplicial map f: K -> L (vertex map), C^q(L) -> C^q(K).
inline RatMatrix pullback(const SimplicialComplex& K, const SimplicialComplex& L, const std::vector<int>& f,
                          std::size_t q) {
  RatMatrix m(K.count(q), L.count(q));
  for (std::size_t a = 0; a < K.count(q); ++a) {
    const Simplex& s = K.simplices(q)[a];
    std::vector<int> img;
    for (int v : s) img.push_back(f.at(v));
    Simplex sorted = img;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;  // degenerate
    if (!L.contains(sorted)) throw ValidationError("vertex map is not simplicial");
    m(a, L.index_of(sorted)) = permutation_sign(img);
  }
  return m;
}

}  // namespace detail

// 0 -> C(X) -> C(Xcut) -> C(Sigma) -> 0, with j the difference of the two
// restrictions to the copies of Sigma.
inline ShortExactSequence mayer_vietoris(const complexes::CutPresentation& cp) {
  ShortExactSequence S{cochain_complex(cp.X), cochain_complex(cp.Xcut), cochain_complex(cp.Sigma), {}, {}};
  for (std::size_t q = 0; q < 4; ++q) {
    S.i.push_back(detail::pullback(cp.Xcut, cp.X, cp.to_X, q));
    S.j.push_back(detail::pullback(cp.Sigma, cp.Xcut, cp.copy_a, q) -
                  detail::pullback(cp.Sigma, cp.Xcut, cp.copy_b, q));
  }
  return S;
}

// 0 -> C(X, dX) -> C(X) -> C(dX) -> 0
inline ShortExactSequence pair_sequence(const SimplicialPair& P) {
  ShortExactSequence S{cochain_complex(P.X, &P.A), cochain_complex(P.X), cochain_complex(P.A), {}, {}};
  for (std::size_t q = 0; q < 4; ++q) {
    auto kept = P.X.kept(q, &P.A);
    RatMatrix inc(P.X.count(q), kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c) inc(kept[c], c) = 1;
    RatMatrix res(P.A.count(q), P.X.count(q));
    for (std::size_t r = 0; r < P.A.count(q); ++r) res(r, P.X.index_of(P.A.simplices(q)[r])) = 1;
    S.i.push_back(inc);
    S.j.push_back(res);
  }
  return S;
}

struct GlueReport {
  LESReport les;
  double residual = 0;
  bool pass(double tol) const { return residual <= tol; }
};

// Checks T_X = T_Xcut / T_Sigma once the determinant lines are aligned by the
// torsion of the long exact sequence in cohomology.
inline GlueReport glue_check(const ShortExactSequence& mv) {
  GlueReport r;
  r.les = les_torsion(mv);
  r.residual = r.les.residual_double();
  return r;
}

inline GlueReport glue_check(const complexes::CutPresentation& cp) { return glue_check(mayer_vietoris(cp)); }

// Scalar value of the torsion half-density on the relative moduli, against
// the integer lattice normalization of every cohomology group involved.
inline double torsion_half_density_integral(const SimplicialPair& P, const CohomologyProfile& profile) {
  auto les = les_torsion(pair_sequence(P));
  Int tors = profile.relative ? profile.relative->torsion_order(2) : Int(1);
  return std::sqrt(to_double(les.T_B)) * tors.convert_to<double>() * std::sqrt(to_double(les.T_H));
}

inline double torsion_half_density_integral(const SimplicialPair& P) {
  return torsion_half_density_integral(P, cohomology(P));
}

// Ratio 2^{chi(dX)/2} between the analytic and the combinatorial torsion
// norms; exposed for comparisons only and never applied by this library.
inline double two_power_chi_factor(long chi_boundary) { return std::pow(2.0, 0.5 * double(chi_boundary)); }

}  // namespace abelcs
