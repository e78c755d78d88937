#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "quantize.hpp"

namespace abelcs {

// Matrix whose entries are sums of exact phases e^{i pi r}, times a common
// positive scale sqrt(scale_sq).
struct ExactOperator {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<Rat>> entries;
  Rat scale_sq = 1;

  ExactOperator() = default;
  ExactOperator(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  static ExactOperator identity(std::size_t n) {
    ExactOperator I(n, n);
    for (std::size_t i = 0; i < n; ++i) I.at(i, i).push_back(Rat(0));
    return I;
  }

  std::vector<Rat>& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const std::vector<Rat>& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

  double scale() const { return std::sqrt(to_double(scale_sq)); }

  CMatrix to_complex() const {
    CMatrix m(rows, cols);
    const double s = scale();
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        cplx z = 0;
        for (auto& r : at(i, j)) z += phase_to_complex(r);
        m(i, j) = s * z;
      }
    return m;
  }

  // multiply every entry by e^{i pi r}
  ExactOperator& rotate(const Rat& r) {
    for (auto& e : entries)
      for (auto& x : e) x = reduce_phase(x + r);
    return *this;
  }

  // canonical multiset per entry: phases reduced, opposite pairs cancelled
  std::vector<std::vector<Rat>> canonical_entries() const {
    std::vector<std::vector<Rat>> out;
    for (auto& e : entries) {
      std::vector<Rat> v;
      for (auto& x : e) v.push_back(reduce_phase(x));
      std::sort(v.begin(), v.end());
      std::vector<Rat> kept;
      std::vector<char> dead(v.size(), 0);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (dead[i]) continue;
        Rat opp = reduce_phase(v[i] + 1);
        bool cancelled = false;
        for (std::size_t j = i + 1; j < v.size(); ++j)
          if (!dead[j] && v[j] == opp) {
            dead[j] = 1;
            cancelled = true;
            break;
          }
        if (!cancelled) kept.push_back(v[i]);
      }
      out.push_back(kept);
    }
    return out;
  }

  bool exactly_equals(const ExactOperator& o) const {
    return rows == o.rows && cols == o.cols && scale_sq == o.scale_sq &&
           canonical_entries() == o.canonical_entries();
  }

  friend ExactOperator operator*(const ExactOperator& a, const ExactOperator& b) {
    if (a.cols != b.rows) throw ValidationError("operator product dimension mismatch");
    ExactOperator p(a.rows, b.cols);
    p.scale_sq = a.scale_sq * b.scale_sq;
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t l = 0; l < a.cols; ++l) {
        const auto& x = a.at(i, l);
        if (x.empty()) continue;
        for (std::size_t j = 0; j < b.cols; ++j) {
          const auto& y = b.at(l, j);
          auto& dst = p.at(i, j);
          for (auto& r : x)
            for (auto& s : y) dst.push_back(reduce_phase(r + s));
        }
      }
    return p;
  }
};

// ---- complex matrix helpers ----

inline CMatrix adjoint(const CMatrix& m) {
  CMatrix a(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(j, i) = std::conj(m(i, j));
  return a;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  double d = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

inline double unitarity_residual(const CMatrix& u) {
  return max_abs_diff(adjoint(u) * u, CMatrix::identity(u.cols()));
}

// ---- BKS pairing ----

// One connected component of an intersection of leaves.
struct IntersectionComponent {
  std::size_t q1, q2;
  Rat phase;  // conj(s2) s1 on the component
};

struct PairingData {
  std::vector<IntersectionComponent> components;
  std::size_t rank = 0;     // g - dim of the intersection directions
  Int index = 1;            // product of the nonzero Smith factors of w(W2, W1)
  Rat scale_sq = 1;         // k^{-rank} / index
};

// Enumerates Lambda_1(q1) ∩ Lambda_2(q2) for all labels. Points on leaf q1 are
// x = W1 a + T1 q1 / k with a in (R/Z)^g; they lie on a BS leaf of space2 iff
// w(W2, W1) a ∈ (1/k) Z^g. In Smith coordinates b = V a the constrained
// entries run over (1/(k d_i)) Z mod 1 and the free ones parametrize the
// component, so the representative takes them to be 0.
// When sources is given, only those labels q1 are enumerated.
inline PairingData bks_components_reference(const HilbertSpace& S2, const HilbertSpace& S1,
                                            const std::vector<std::size_t>* sources = nullptr) {
  if (S1.genus() != S2.genus() || S1.level() != S2.level())
    throw ValidationError("bks: incompatible spaces");
  const std::size_t g = S1.genus();
  const long k = S1.level();
  PairingData out;
  IntMatrix W1 = S1.W(), W2 = S2.W();
  IntMatrix P = omega(W2, W1);
  auto s = smith_normal_form(P);
  out.rank = s.rank;
  std::vector<long> range(g, 1);
  for (std::size_t i = 0; i < s.rank; ++i) {
    out.index *= s.D(i, i);
    range[i] = k * to_ll(s.D(i, i));
  }
  out.scale_sq = Rat(1) / Rat(out.index);
  for (std::size_t i = 0; i < s.rank; ++i) out.scale_sq /= k;

  RatMatrix Vinv = to_rat(s.Vinv), W1r = to_rat(W1);
  const Rat kk(k);
  std::vector<std::size_t> all;
  if (!sources) {
    for (std::size_t q1 = 0; q1 < S1.dim(); ++q1) all.push_back(q1);
    sources = &all;
  }
  for (std::size_t q1 : *sources) {
    RatMatrix x0 = S1.base_point(q1);
    std::vector<long> c(g, 0);
    bool done = false;
    while (!done) {
      RatMatrix b(g, 1);
      for (std::size_t i = 0; i < g; ++i) b(i, 0) = Rat(c[i], range[i]);
      RatMatrix v = W1r * (Vinv * b);
      auto loc = S2.locate(x0 + v);
      if (!loc) throw std::logic_error("bks: intersection point missed the target leaves");
      Rat ph = kk * omega(x0, v)(0, 0) - loc->phase;
      out.components.push_back({q1, loc->index, reduce_phase(ph)});
      done = true;
      for (std::size_t i = g; i-- > 0;) {
        if (++c[i] < range[i]) {
          done = false;
          break;
        }
        c[i] = 0;
      }
    }
  }
  return out;
}

// Same enumeration in integer arithmetic: every point lies in (1/D) Z^{2g}
// with D = lcm(k, k d_i), so phases are integers over D^2. Falls back to the
// rational version when the numbers leave 64-bit range.
inline PairingData bks_components(const HilbertSpace& S2, const HilbertSpace& S1,
                                  const std::vector<std::size_t>* sources = nullptr) {
  if (S1.genus() != S2.genus() || S1.level() != S2.level())
    throw ValidationError("bks: incompatible spaces");
  using i128 = __int128;
  const std::size_t g = S1.genus(), n2 = 2 * g;
  const long k = S1.level();
  IntMatrix W1 = S1.W();
  auto s = smith_normal_form(omega(S2.W(), W1));
  const Int lim = Int(1) << 40;
  auto small = [&](const IntMatrix& m) {
    for (auto& v : m.data())
      if (v > lim || v < -lim) return false;
    return true;
  };
  IntMatrix WV = W1 * s.Vinv, Finv2 = sp_inverse(S2.frame()), W2 = S2.W(), T2 = S2.T();
  Int index = 1;
  for (std::size_t i = 0; i < s.rank; ++i) index *= s.D(i, i);
  if (index > lim || !small(WV) || !small(Finv2) || !small(W2) || !small(T2)) return bks_components_reference(S2, S1, sources);

  PairingData out;
  out.rank = s.rank;
  out.index = index;
  out.scale_sq = Rat(1) / Rat(index);
  for (std::size_t i = 0; i < s.rank; ++i) out.scale_sq /= k;
  std::vector<long long> range(g, 1);
  long long D = k;
  for (std::size_t i = 0; i < s.rank; ++i) {
    range[i] = k * to_ll(s.D(i, i));
    D = std::lcm(D, range[i]);
  }
  if (D > (1LL << 24)) return bks_components_reference(S2, S1, sources);
  const i128 DD = i128(D) * D;

  auto ll = [](const IntMatrix& m) {
    std::vector<long long> v;
    for (auto& x : m.data()) v.push_back(to_ll(x));
    return v;
  };
  const auto wv = ll(WV), fi = ll(Finv2), w2 = ll(W2), t2 = ll(T2);
  auto omega_i = [&](const std::vector<i128>& a, const std::vector<i128>& b) {
    i128 r = 0;
    for (std::size_t i = 0; i < g; ++i) r += a[i] * b[g + i] - a[g + i] * b[i];
    return r;
  };
  // U[i] = W1 Vinv e_i * D / range_i
  std::vector<std::vector<i128>> U(g, std::vector<i128>(n2));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t r = 0; r < n2; ++r) U[i][r] = i128(wv[r * g + i]) * (D / range[i]);

  std::vector<std::size_t> all;
  if (!sources) {
    for (std::size_t q1 = 0; q1 < S1.dim(); ++q1) all.push_back(q1);
    sources = &all;
  }
  std::vector<i128> X(n2), Y(n2), V(n2), X02(n2), nn(n2), tmp(n2), dX(n2);
  std::vector<long> q(g), c(g);
  std::vector<i128> m(g);
  for (std::size_t q1 : *sources) {
    RatMatrix x0 = S1.base_point(q1);
    std::vector<i128> X0(n2);
    for (std::size_t r = 0; r < n2; ++r) {
      Rat t = x0(r, 0) * D;
      X0[r] = i128(to_ll(boost::multiprecision::numerator(t)));
    }
    std::fill(c.begin(), c.end(), 0);
    bool done = false;
    while (!done) {
      for (std::size_t r = 0; r < n2; ++r) {
        dX[r] = 0;
        for (std::size_t i = 0; i < g; ++i) dX[r] += c[i] * U[i][r];
        X[r] = X0[r] + dX[r];
      }
      for (std::size_t r = 0; r < n2; ++r) {
        Y[r] = 0;
        for (std::size_t j = 0; j < n2; ++j) Y[r] += fi[r * n2 + j] * X[j];
      }
      for (std::size_t i = 0; i < g; ++i) {
        i128 t = i128(k) * Y[g + i];
        if (t % D != 0) throw std::logic_error("bks: intersection point missed the target leaves");
        i128 kb = t / D;
        i128 qi = ((kb % k) + k) % k;
        q[i] = long(qi);
        m[i] = (kb - qi) / k;
      }
      for (std::size_t r = 0; r < n2; ++r) {
        nn[r] = 0;
        V[r] = 0;
        X02[r] = 0;
        for (std::size_t j = 0; j < g; ++j) {
          nn[r] += t2[r * g + j] * m[j];
          V[r] += w2[r * g + j] * Y[j];
          X02[r] += t2[r * g + j] * i128(q[j]) * (D / k);
        }
        tmp[r] = X02[r] + V[r];
      }
      // k w(x0, v) - [k w(n, x0' + v') + k w(x0', v')], numerator over D^2
      i128 num = i128(k) * (omega_i(X0, dX) - omega_i(X02, V) - omega_i(nn, tmp) * D);
      num %= 2 * DD;
      if (num < 0) num += 2 * DD;
      out.components.push_back(
          {q1, S2.index(q), reduce_phase(Rat(Int(static_cast<long long>(num)), Int(static_cast<long long>(DD))))});
      done = true;
      for (std::size_t i = g; i-- > 0;) {
        if (++c[i] < range[i]) {
          done = false;
          break;
        }
        c[i] = 0;
      }
    }
  }
  return out;
}

inline ExactOperator bks_pairing(const HilbertSpace& S2, const HilbertSpace& S1) {
  auto d = bks_components(S2, S1);
  ExactOperator F(S2.dim(), S1.dim());
  F.scale_sq = d.scale_sq;
  for (auto& c : d.components) F.at(c.q2, c.q1).push_back(c.phase);
  return F;
}

// F_{L2 L1} : H(Sigma, L1) -> H(Sigma, L2) in the adapted frames.
inline ExactOperator intertwiner(const Lagrangian& L2, const Lagrangian& L1, long k) {
  return bks_pairing(HilbertSpace(L2, k), HilbertSpace(L1, k));
}

// Transport of sections by the lattice map M: v_q goes to the basis vector of
// the leaf through M x0(q), rescaled so the transported section is 1 there.
inline ExactOperator pushforward(const IntMatrix& M, const HilbertSpace& src, const HilbertSpace& tgt) {
  if (!is_symplectic(M)) throw ValidationError("pushforward: map is not symplectic");
  if (act_on_lagrangian(M, src.lagrangian()) != tgt.lagrangian())
    throw ValidationError("pushforward: target polarization is not the image");
  ExactOperator P(tgt.dim(), src.dim());
  RatMatrix Mr = to_rat(M);
  for (std::size_t q = 0; q < src.dim(); ++q) {
    auto loc = tgt.locate(Mr * src.base_point(q));
    if (!loc) throw std::logic_error("pushforward: image point is not on a BS leaf");
    P.at(loc->index, q).push_back(reduce_phase(-loc->phase));
  }
  return P;
}

// ---- extended morphisms of surfaces ----

// (M, m): U(M, m) = e^{i pi m / 4} F_{target, M source} ∘ M_* from
// H(Sigma, source) to H(Sigma, target). M is the action on H^1.
struct EMorphism2 {
  IntMatrix M;
  long m = 0;
  Lagrangian source, target;

  static EMorphism2 on(const Lagrangian& L, const IntMatrix& M, long m = 0) { return {M, m, L, L}; }
  static EMorphism2 identity(const Lagrangian& L) {
    return {IntMatrix::identity(2 * L.genus), 0, L, L};
  }
};

inline long mod8(long n) { return ((n % 8) + 8) % 8; }

// second ∘ first (first acts first).
inline EMorphism2 compose(const EMorphism2& second, const EMorphism2& first) {
  if (!(first.target == second.source)) throw ValidationError("compose: morphisms are not composable");
  EMorphism2 r;
  r.M = second.M * first.M;
  r.source = first.source;
  r.target = second.target;
  int tau = maslov_index(second.target, act_on_lagrangian(second.M, first.target),
                         act_on_lagrangian(r.M, first.source));
  r.m = mod8(first.m + second.m + tau);
  return r;
}

inline EMorphism2 inverse(const EMorphism2& x) {
  return {sp_inverse(x.M), mod8(-x.m), x.target, x.source};
}

inline ExactOperator mapping_class_operator(const EMorphism2& x, const HilbertSpace& src, const HilbertSpace& tgt) {
  if (!(src.lagrangian() == x.source) || !(tgt.lagrangian() == x.target))
    throw ValidationError("mapping_class_operator: spaces do not match the morphism");
  HilbertSpace mid(act_on_lagrangian(x.M, x.source), src.level());
  ExactOperator U = bks_pairing(tgt, mid) * pushforward(x.M, src, mid);
  U.rotate(Rat(x.m, 4));
  return U;
}

inline ExactOperator mapping_class_operator(const IntMatrix& M, long m, const Lagrangian& L, long k) {
  HilbertSpace S(L, k);
  return mapping_class_operator(EMorphism2::on(L, M, m), S, S);
}

// Generator operators in the basis attached to the frame of `space`; the token
// is read in that frame.
inline ExactOperator generator_operator(const Token& t, const HilbertSpace& space) {
  const std::size_t g = space.genus();
  const long k = space.level();
  if (t.genus != g) throw ValidationError("generator_operator: genus mismatch");
  const std::size_t n = space.dim();
  ExactOperator U(n, n);
  switch (t.kind) {
    case Gen::Alpha: {
      RatMatrix AinvT = inverse(to_rat(t.param)).transpose();
      IntMatrix B = *to_int(AinvT);
      for (std::size_t i = 0; i < n; ++i) {
        auto q = space.label(i);
        std::vector<Int> img(g, 0);
        for (std::size_t r = 0; r < g; ++r)
          for (std::size_t c = 0; c < g; ++c) img[r] += B(r, c) * q[c];
        U.at(space.index(img), i).push_back(Rat(0));
      }
      break;
    }
    case Gen::Beta:
      for (std::size_t i = 0; i < n; ++i) {
        auto q = space.label(i);
        Int s = 0;
        for (std::size_t r = 0; r < g; ++r)
          for (std::size_t c = 0; c < g; ++c) s += t.param(r, c) * q[r] * q[c];
        U.at(i, i).push_back(reduce_phase(Rat(s, k)));
      }
      break;
    case Gen::Gamma:
      U.scale_sq = 1;
      for (std::size_t r = 0; r < g; ++r) U.scale_sq /= k;
      for (std::size_t i = 0; i < n; ++i) {
        auto q = space.label(i);
        for (std::size_t j = 0; j < n; ++j) {
          auto q1 = space.label(j);
          long s = 0;
          for (std::size_t r = 0; r < g; ++r) s += q[r] * q1[r];
          U.at(j, i).push_back(reduce_phase(Rat(2 * s, k)));
        }
      }
      break;
  }
  return U;
}

// Lattice matrix of a token read in a frame: F G F^{-1}.
inline IntMatrix token_in_frame(const Token& t, const IntMatrix& frame) {
  return frame * t.matrix() * sp_inverse(frame);
}

}  // namespace abelcs
