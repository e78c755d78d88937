#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "symplectic.hpp"

namespace abelcs {

// e^{i pi r}, with r reduced into [0, 2)
inline Rat reduce_phase(const Rat& r) { return rmod(r, Rat(2)); }

inline cplx phase_to_complex(const Rat& r) {
  Rat t = reduce_phase(r);
  // exact values at multiples of 1/2 avoid stray 1e-17 components
  if (t == 0) return {1, 0};
  if (t == Rat(1, 2)) return {0, 1};
  if (t == 1) return {-1, 0};
  if (t == Rat(3, 2)) return {0, -1};
  double a = std::numbers::pi * to_double(t);
  return {std::cos(a), std::sin(a)};
}

inline void check_level(long k) {
  if (k < 2 || k % 2 != 0) throw ValidationError("level must be a positive even integer");
}

inline RatMatrix rat_vector(const std::vector<Rat>& v) {
  RatMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

struct BSLeaf {
  std::vector<long> q;
  RatMatrix base;  // x0 = T q / k
};

// Quantization H(Sigma, L) at level k in the real polarization along L.
// The basis vector v_q is the unit covariantly constant section over the
// Bohr-Sommerfeld leaf x0(q) + L, normalized to 1 at x0(q).
class HilbertSpace {
 public:
  struct Location {
    std::size_t index;
    Rat phase;  // section value e^{i pi phase}
  };

  HilbertSpace(const Lagrangian& L, long k) : HilbertSpace(adapted_frame(L), k, true) {}

  // Any integer symplectic frame; its first g columns span the polarization.
  static HilbertSpace with_frame(const IntMatrix& frame, long k) { return HilbertSpace(frame, k, true); }

  std::size_t genus() const { return g_; }
  long level() const { return k_; }
  std::size_t dim() const { return dim_; }
  const Lagrangian& lagrangian() const { return lag_; }
  const IntMatrix& frame() const { return F_; }
  IntMatrix W() const { return F_.block(0, 0, 2 * g_, g_); }
  IntMatrix T() const { return F_.block(0, g_, 2 * g_, g_); }

  std::vector<long> label(std::size_t idx) const {
    std::vector<long> q(g_);
    for (std::size_t i = g_; i-- > 0;) {
      q[i] = long(idx % k_);
      idx /= k_;
    }
    return q;
  }

  std::size_t index(const std::vector<Int>& q) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < g_; ++i) idx = idx * k_ + mod(q[i], Int(k_)).convert_to<std::size_t>();
    return idx;
  }

  std::size_t index(const std::vector<long>& q) const {
    std::vector<Int> v(q.begin(), q.end());
    return index(v);
  }

  RatMatrix base_point(std::size_t idx) const {
    auto q = label(idx);
    RatMatrix x(2 * g_, 1);
    for (std::size_t i = 0; i < 2 * g_; ++i)
      for (std::size_t j = 0; j < g_; ++j) x(i, 0) += Rat(F_(i, g_ + j) * q[j], k_);
    return x;
  }

  std::vector<BSLeaf> leaves() const {
    std::vector<BSLeaf> out;
    for (std::size_t i = 0; i < dim_; ++i) out.push_back({label(i), base_point(i)});
    return out;
  }

  // Writes x = x0(q) + v + n with v in L and n integral; returns q and the
  // value of v_q at x, or nothing if x is not on a Bohr-Sommerfeld leaf.
  std::optional<Location> locate(const RatMatrix& x) const {
    RatMatrix y = Finv_ * x;
    std::vector<Int> q(g_);
    RatMatrix m(g_, 1), a(g_, 1);
    for (std::size_t i = 0; i < g_; ++i) {
      a(i, 0) = y(i, 0);
      Rat kb = Rat(k_) * y(g_ + i, 0);
      if (boost::multiprecision::denominator(kb) != 1) return std::nullopt;
      Int kbi = boost::multiprecision::numerator(kb);
      q[i] = mod(kbi, Int(k_));
      m(i, 0) = Rat(kbi - q[i], k_);
    }
    RatMatrix n = Trat_ * m;  // integral
    RatMatrix v = Wrat_ * a;
    RatMatrix x0(2 * g_, 1);
    for (std::size_t i = 0; i < 2 * g_; ++i)
      for (std::size_t j = 0; j < g_; ++j) x0(i, 0) += Trat_(i, j) * Rat(q[j], k_);
    Rat kk(k_);
    Rat ph = kk * omega(n, x0 + v)(0, 0) + kk * omega(x0, v)(0, 0);
    return Location{index(q), reduce_phase(ph)};
  }

  // Value of v_idx at x; throws if x is not on that leaf.
  Rat section_phase(std::size_t idx, const RatMatrix& x) const {
    auto loc = locate(x);
    if (!loc || loc->index != idx) throw ValidationError("point is not on the requested leaf");
    return loc->phase;
  }

 private:
  HilbertSpace(const IntMatrix& frame, long k, bool) : k_(k), F_(frame) {
    check_level(k);
    if (!is_symplectic(frame)) throw ValidationError("frame is not symplectic");
    g_ = frame.rows() / 2;
    lag_ = Lagrangian::from_gens(W());
    dim_ = 1;
    for (std::size_t i = 0; i < g_; ++i) dim_ *= std::size_t(k);
    Finv_ = to_rat(sp_inverse(F_));
    Wrat_ = to_rat(W());
    Trat_ = to_rat(T());
  }

  std::size_t g_ = 0;
  long k_ = 2;
  std::size_t dim_ = 1;
  IntMatrix F_;
  Lagrangian lag_;
  RatMatrix Finv_, Wrat_, Trat_;
};

inline std::vector<BSLeaf> bs_leaves(const Lagrangian& L, long k) { return HilbertSpace(L, k).leaves(); }

// Phase picked up by a section transported from x0 around the lattice circuit
// n (in L): straight-line holonomy against quasi-periodicity. 1 on BS leaves.
inline Rat circuit_phase(const RatMatrix& x0, const IntMatrix& n, long k) {
  return reduce_phase(Rat(2 * k) * omega(x0, to_rat(n))(0, 0));
}

// c(a, l) = exp(-i pi k w(a, l)) as an exponent of e^{i pi .}
inline Rat gauge_cocycle(const RatMatrix& a, const IntMatrix& l, long k) {
  return reduce_phase(-Rat(k) * omega(a, to_rat(l))(0, 0));
}

struct CocycleReport {
  bool pass = true;
  std::size_t checked = 0;
  // first failing triple, if any
  RatMatrix a;
  IntMatrix l1, l2;
  Rat defect;
};

// Checks c(a, l1 + l2) = c(a, l1) c(a + l1, l2) on small lattice vectors and
// random rational classes.
inline CocycleReport cocycle_check(long k, std::size_t genus = 1, std::size_t trials = 200,
                                   std::uint64_t seed = 0) {
  if (k == 0) throw ValidationError("level must be nonzero");
  CocycleReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> den(1, 6);
  const std::size_t n = 2 * genus;
  auto test = [&](const RatMatrix& a, const IntMatrix& l1, const IntMatrix& l2) {
    ++rep.checked;
    Rat lhs = gauge_cocycle(a, l1 + l2, k);
    Rat rhs = reduce_phase(gauge_cocycle(a, l1, k) + gauge_cocycle(a + to_rat(l1), l2, k));
    if (lhs != rhs && rep.pass) {
      rep.pass = false;
      rep.a = a;
      rep.l1 = l1;
      rep.l2 = l2;
      rep.defect = reduce_phase(lhs - rhs);
    }
  };
  // unit vectors first: the pair (e_i, f_i) is the natural witness
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix l1(n, 1), l2(n, 1);
      l1(i, 0) = 1;
      l2(j, 0) = 1;
      test(RatMatrix(n, 1), l1, l2);
    }
  for (std::size_t t = 0; t < trials; ++t) {
    RatMatrix a(n, 1);
    IntMatrix l1(n, 1), l2(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      a(i, 0) = Rat(num(rng), den(rng));
      l1(i, 0) = small(rng);
      l2(i, 0) = small(rng);
    }
    test(a, l1, l2);
  }
  return rep;
}

}  // namespace abelcs
