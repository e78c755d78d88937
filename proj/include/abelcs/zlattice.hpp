#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace abelcs {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (auto& row : rows) {
      if (row.size() != c_) throw ValidationError("ragged matrix literal");
      for (auto& x : row) a_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool empty() const { return r_ == 0 || c_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix col(std::size_t j) const { return block(0, j, r_, 1); }
  Matrix row(std::size_t i) const { return block(i, 0, 1, c_); }

  Matrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }

  void set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  Matrix cols_subset(const std::vector<std::size_t>& idx) const {
    Matrix b(r_, idx.size());
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = (*this)(i, idx[j]);
    return b;
  }

  Matrix rows_subset(const std::vector<std::size_t>& idx) const {
    Matrix b(idx.size(), c_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < c_; ++j) b(i, j) = (*this)(idx[i], j);
    return b;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }
  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const T& c) {
    if (c == T(0)) return;
    for (std::size_t k = 0; k < c_; ++k) (*this)(i, k) += c * (*this)(j, k);
  }
  // col_j += c * col_i
  void add_col(std::size_t j, std::size_t i, const T& c) {
    if (c == T(0)) return;
    for (std::size_t k = 0; k < r_; ++k) (*this)(k, j) += c * (*this)(k, i);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < c_; ++k) (*this)(i, k) = -(*this)(i, k);
  }
  void negate_col(std::size_t j) {
    for (std::size_t k = 0; k < r_; ++k) (*this)(k, j) = -(*this)(k, j);
  }

  bool is_zero() const {
    for (auto& x : a_)
      if (x != T(0)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw ValidationError("matrix product dimension mismatch");
    Matrix p(a.r_, b.c_);
    std::vector<std::vector<std::size_t>> support(b.r_);
    for (std::size_t k = 0; k < b.r_; ++k)
      for (std::size_t j = 0; j < b.c_; ++j)
        if (b(k, j) != T(0)) support[k].push_back(j);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (x == T(0)) continue;
        for (auto j : support[k]) p(i, j) += x * b(k, j);
      }
    return p;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix s = a;
    for (std::size_t i = 0; i < s.a_.size(); ++i) s.a_[i] += b.a_[i];
    return s;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix s = a;
    for (std::size_t i = 0; i < s.a_.size(); ++i) s.a_[i] -= b.a_[i];
    return s;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix s = a;
    for (auto& x : s.a_) x = -x;
    return s;
  }
  friend Matrix operator*(const T& c, const Matrix& a) {
    Matrix s = a;
    for (auto& x : s.a_) x *= c;
    return s;
  }

  const std::vector<T>& data() const { return a_; }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw ValidationError("matrix shape mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using CMatrix = Matrix<cplx>;

template <typename T>
Matrix<T> hcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw ValidationError("hcat row mismatch");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

template <typename T>
Matrix<T> vcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) throw ValidationError("vcat column mismatch");
  Matrix<T> m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

template <typename T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

template <typename T>
std::string to_string(const Matrix<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---- scalar helpers ----

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int mod(const Int& a, const Int& b) {
  Int r = a % b;
  if (r < 0) r += (b < 0 ? -b : b);
  return r;
}

inline Int iabs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int floor(const Rat& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

// fractional part in [0,1)
inline Rat frac(const Rat& r) { return r - Rat(floor(r)); }

// reduce into [0, m)
inline Rat rmod(const Rat& r, const Rat& m) { return r - m * Rat(floor(r / m)); }

inline long long to_ll(const Int& a) {
  if (a > std::numeric_limits<long long>::max() || a < std::numeric_limits<long long>::min())
    throw ValidationError("integer out of 64-bit range");
  return a.convert_to<long long>();
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// extended gcd: returns (g, x, y) with a x + b y = g >= 0
inline std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = floor_div(a, b);
    Int t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

inline RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

inline std::optional<IntMatrix> to_int(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (boost::multiprecision::denominator(m(i, j)) != 1) return std::nullopt;
      r(i, j) = boost::multiprecision::numerator(m(i, j));
    }
  return r;
}

template <typename T>
CMatrix to_complex(const Matrix<T>& m) {
  CMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = cplx(m(i, j).template convert_to<double>(), 0.0);
  return c;
}

// ---- Hermite normal form ----

struct HermiteResult {
  IntMatrix H;  // H = A * U
  IntMatrix U;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // pivot row of column j, j < rank
};

// Column-style HNF: lower echelon, positive pivots, entries left of a pivot
// reduced into [0, pivot). Zero columns come last.
inline HermiteResult hermite_normal_form(const IntMatrix& A) {
  HermiteResult res;
  IntMatrix H = A;
  const std::size_t m = A.rows(), n = A.cols();
  IntMatrix U = IntMatrix::identity(n);
  std::size_t c = 0;
  for (std::size_t i = 0; i < m && c < n; ++i) {
    while (true) {
      std::size_t best = n;
      for (std::size_t j = c; j < n; ++j)
        if (H(i, j) != 0 && (best == n || iabs(H(i, j)) < iabs(H(i, best)))) best = j;
      if (best == n) break;
      H.swap_cols(c, best);
      U.swap_cols(c, best);
      bool done = true;
      for (std::size_t j = c + 1; j < n; ++j) {
        if (H(i, j) == 0) continue;
        Int q = floor_div(H(i, j), H(i, c));
        H.add_col(j, c, -q);
        U.add_col(j, c, -q);
        if (H(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (H(i, c) == 0) continue;
    if (H(i, c) < 0) {
      H.negate_col(c);
      U.negate_col(c);
    }
    for (std::size_t j = 0; j < c; ++j) {
      Int q = floor_div(H(i, j), H(i, c));
      H.add_col(j, c, -q);
      U.add_col(j, c, -q);
    }
    res.pivot_rows.push_back(i);
    ++c;
  }
  res.rank = c;
  res.H = std::move(H);
  res.U = std::move(U);
  return res;
}

// ---- Smith normal form ----

struct SmithDecomposition {
  IntMatrix U, D, V;        // A = U D V
  IntMatrix Uinv, Vinv;
  std::size_t rank = 0;
  std::vector<Int> diagonal() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

inline SmithDecomposition smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SmithDecomposition s;
  IntMatrix D = A, U = IntMatrix::identity(m), Ui = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n), Vi = IntMatrix::identity(n);

  auto row_add = [&](std::size_t i, std::size_t j, const Int& c) {  // row_i += c row_j
    if (c == 0) return;
    D.add_row(i, j, c);
    U.add_col(j, i, -c);
    Ui.add_row(i, j, c);
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    D.swap_rows(i, j);
    U.swap_cols(i, j);
    Ui.swap_rows(i, j);
  };
  auto col_add = [&](std::size_t j, std::size_t i, const Int& c) {  // col_j += c col_i
    if (c == 0) return;
    D.add_col(j, i, c);
    V.add_row(i, j, -c);
    Vi.add_col(j, i, c);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    D.swap_cols(i, j);
    V.swap_rows(i, j);
    Vi.swap_cols(i, j);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    while (true) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D(i, j) != 0 && (bi == m || iabs(D(i, j)) < iabs(D(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) goto finished;
      row_swap(t, bi);
      col_swap(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        row_add(i, t, -floor_div(D(i, t), D(t, t)));
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        col_add(j, t, -floor_div(D(t, j), D(t, t)));
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            row_add(t, i, Int(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_col(t);
      Ui.negate_row(t);
    }
  }
finished:
  s.rank = t;
  s.U = std::move(U);
  s.D = std::move(D);
  s.V = std::move(V);
  s.Uinv = std::move(Ui);
  s.Vinv = std::move(Vi);
  return s;
}

// ---- determinants, rank, inverses ----

inline Int determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw ValidationError("determinant of non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0) ++p;
      if (p == n) return 0;
      M.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

inline Rat determinant(const RatMatrix& A) {
  if (A.rows() != A.cols()) throw ValidationError("determinant of non-square matrix");
  RatMatrix M = A;
  const std::size_t n = A.rows();
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && M(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      M.swap_rows(k, p);
      det = -det;
    }
    det *= M(k, k);
    std::vector<std::size_t> nz;
    for (std::size_t j = k; j < n; ++j)
      if (M(k, j) != 0) nz.push_back(j);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (M(i, k) == 0) continue;
      Rat f = M(i, k) / M(k, k);
      for (auto j : nz) M(i, j) -= f * M(k, j);
    }
  }
  return det;
}

// Reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& M) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t p = r;
    while (p < M.rows() && M(p, c) == 0) ++p;
    if (p == M.rows()) continue;
    M.swap_rows(r, p);
    Rat inv = Rat(1) / M(r, c);
    // coboundary matrices are sparse; only touch the support of the pivot row
    std::vector<std::size_t> nz;
    for (std::size_t j = c; j < M.cols(); ++j)
      if (M(r, j) != 0) {
        M(r, j) *= inv;
        nz.push_back(j);
      }
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || M(i, c) == 0) continue;
      Rat f = M(i, c);
      for (auto j : nz) M(i, j) -= f * M(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline std::size_t rank(const RatMatrix& A) {
  RatMatrix M = A;
  return rref(M).size();
}

inline std::size_t rank(const IntMatrix& A) { return rank(to_rat(A)); }

inline RatMatrix inverse(const RatMatrix& A) {
  if (A.rows() != A.cols()) throw ValidationError("inverse of non-square matrix");
  const std::size_t n = A.rows();
  RatMatrix M = hcat(A, RatMatrix::identity(n));
  auto piv = rref(M);
  if (piv.size() < n || piv.back() >= n) throw ValidationError("matrix is singular");
  return M.block(0, n, n, n);
}

// Solve A x = b over Q; nullopt if inconsistent. Free variables set to 0.
inline std::optional<RatMatrix> solve_rational(const RatMatrix& A, const RatMatrix& b) {
  RatMatrix M = hcat(A, b);
  auto piv = rref(M);
  const std::size_t n = A.cols();
  for (auto p : piv)
    if (p >= n) return std::nullopt;
  RatMatrix x(n, b.cols());
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[r], j) = M(r, n + j);
  return x;
}

// Integer basis (as columns) of the kernel lattice {x in Z^n : A x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& A) {
  auto h = hermite_normal_form(A);
  std::vector<std::size_t> idx;
  for (std::size_t j = h.rank; j < A.cols(); ++j) idx.push_back(j);
  return h.U.cols_subset(idx);
}

// Primitive basis of (span_Q B) ∩ Z^m.
inline IntMatrix saturate(const IntMatrix& B) {
  auto s = smith_normal_form(B);
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < s.rank; ++j) idx.push_back(j);
  return s.U.cols_subset(idx);
}

inline bool is_primitive(const IntMatrix& B) {
  auto s = smith_normal_form(B);
  if (s.rank != B.cols()) return false;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) return false;
  return true;
}

// Integer solution of A x = b (b may have several columns).
inline std::optional<IntMatrix> solve_integer(const IntMatrix& A, const IntMatrix& b) {
  auto s = smith_normal_form(A);
  IntMatrix c = s.Uinv * b;
  IntMatrix y(A.cols(), b.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (i < s.rank) {
        if (c(i, j) % s.D(i, i) != 0) return std::nullopt;
        y(i, j) = c(i, j) / s.D(i, i);
      } else if (c(i, j) != 0) {
        return std::nullopt;
      }
    }
  return s.Vinv * y;
}

// K with K W = I for W with primitive full-rank columns.
inline IntMatrix left_inverse(const IntMatrix& W) {
  auto s = smith_normal_form(W);
  if (s.rank != W.cols()) throw ValidationError("left_inverse: columns not independent");
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) throw ValidationError("left_inverse: columns not primitive");
  IntMatrix P(W.cols(), W.rows());
  for (std::size_t i = 0; i < W.cols(); ++i) P(i, i) = 1;
  return s.Vinv * P * s.Uinv;
}

// ---- signature ----

inline bool is_symmetric(const RatMatrix& S) {
  if (S.rows() != S.cols()) return false;
  for (std::size_t i = 0; i < S.rows(); ++i)
    for (std::size_t j = i + 1; j < S.cols(); ++j)
      if (S(i, j) != S(j, i)) return false;
  return true;
}

// Exact signature by symmetric Gaussian elimination (congruence).
inline int signature(const RatMatrix& S0) {
  if (!is_symmetric(S0)) throw ValidationError("signature: matrix is not symmetric");
  RatMatrix S = S0;
  const std::size_t n = S.rows();
  int sig = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (S(i, i) == 0) {
      std::size_t p = n;
      for (std::size_t j = i + 1; j < n; ++j)
        if (S(j, j) != 0) {
          p = j;
          break;
        }
      if (p != n) {
        S.swap_rows(i, p);
        S.swap_cols(i, p);
      } else {
        std::size_t q = n;
        for (std::size_t j = i + 1; j < n; ++j)
          if (S(i, j) != 0) {
            q = j;
            break;
          }
        if (q == n) continue;  // row i vanishes
        // diagonal entries beyond i are all zero, so this makes S(i,i) = 2 S(i,q)
        S.add_row(i, q, Rat(1));
        S.add_col(i, q, Rat(1));
      }
    }
    const Rat piv = S(i, i);
    sig += piv > 0 ? 1 : -1;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (S(j, i) == 0) continue;
      Rat f = S(j, i) / piv;
      for (std::size_t l = i; l < n; ++l) S(j, l) -= f * S(i, l);
      for (std::size_t l = i; l < n; ++l) S(l, j) -= f * S(l, i);
    }
  }
  return sig;
}

// ---- invariant factors for large sparse matrices ----

namespace detail {

inline bool mul_add_ok(long long a, long long c, long long b, long long& out) {
  long long t;
  if (__builtin_mul_overflow(c, b, &t)) return false;
  if (__builtin_add_overflow(a, t, &out)) return false;
  return true;
}

}  // namespace detail

struct InvariantFactors {
  std::size_t rank = 0;
  std::vector<Int> nontrivial;  // factors > 1, ascending divisibility chain
};

// Eliminates unit pivots in 64-bit arithmetic and hands the leftover block to
// the dense Smith form. Falls back to the dense path on overflow.
inline InvariantFactors invariant_factors(const IntMatrix& A) {
  InvariantFactors out;
  const std::size_t m = A.rows(), n = A.cols();
  std::vector<std::vector<std::pair<std::size_t, long long>>> rows(m);
  bool ok = true;
  for (std::size_t i = 0; i < m && ok; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (A(i, j) != 0) {
        if (iabs(A(i, j)) > Int(1) << 40) {
          ok = false;
          break;
        }
        rows[i].push_back({j, A(i, j).convert_to<long long>()});
      }
  std::size_t units = 0;
  if (ok) {
    std::vector<std::vector<std::size_t>> colrows(n);
    for (std::size_t i = 0; i < m; ++i)
      for (auto& e : rows[i]) colrows[e.first].push_back(i);
    std::vector<char> row_alive(m, 1);
    bool progress = true;
    while (progress && ok) {
      progress = false;
      for (std::size_t i = 0; i < m && ok; ++i) {
        if (!row_alive[i]) continue;
        std::size_t pc = n;
        long long pv = 0;
        for (auto& e : rows[i])
          if (e.second == 1 || e.second == -1) {
            pc = e.first;
            pv = e.second;
            break;
          }
        if (pc == n) continue;
        // eliminate column pc from other rows using row i; then drop row i and column pc
        std::vector<std::size_t> touched;
        for (auto r : colrows[pc])
          if (r != i && row_alive[r]) touched.push_back(r);
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (auto r : touched) {
          long long a = 0;
          for (auto& e : rows[r])
            if (e.first == pc) a = e.second;
          if (a == 0) continue;
          long long c = -a * pv;  // row_r += c * row_i
          std::vector<std::pair<std::size_t, long long>> merged;
          auto& x = rows[r];
          auto& y = rows[i];
          std::size_t p = 0, q = 0;
          while (p < x.size() || q < y.size()) {
            if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
              merged.push_back(x[p++]);
            } else if (p == x.size() || y[q].first < x[p].first) {
              long long v;
              if (!detail::mul_add_ok(0, c, y[q].second, v)) ok = false;
              merged.push_back({y[q].first, v});
              colrows[y[q].first].push_back(r);
              ++q;
            } else {
              long long v;
              if (!detail::mul_add_ok(x[p].second, c, y[q].second, v)) ok = false;
              if (v != 0) merged.push_back({x[p].first, v});
              ++p;
              ++q;
            }
          }
          if (!ok) break;
          std::vector<std::pair<std::size_t, long long>> cleaned;
          for (auto& e : merged)
            if (e.second != 0 && e.first != pc) cleaned.push_back(e);
          x.swap(cleaned);
        }
        if (!ok) break;
        row_alive[i] = 0;
        ++units;
        progress = true;
      }
    }
    if (ok) {
      std::vector<std::size_t> live_rows, live_cols;
      std::vector<long long> colmap(n, -1);
      for (std::size_t i = 0; i < m; ++i)
        if (row_alive[i] && !rows[i].empty()) live_rows.push_back(i);
      for (auto i : live_rows)
        for (auto& e : rows[i])
          if (colmap[e.first] < 0) {
            colmap[e.first] = (long long)live_cols.size();
            live_cols.push_back(e.first);
          }
      IntMatrix R(live_rows.size(), live_cols.size());
      for (std::size_t a = 0; a < live_rows.size(); ++a)
        for (auto& e : rows[live_rows[a]]) R(a, colmap[e.first]) = e.second;
      auto s = smith_normal_form(R);
      out.rank = units + s.rank;
      for (std::size_t t = 0; t < s.rank; ++t)
        if (s.D(t, t) > 1) out.nontrivial.push_back(s.D(t, t));
      return out;
    }
  }
  auto s = smith_normal_form(A);
  out.rank = s.rank;
  for (std::size_t t = 0; t < s.rank; ++t)
    if (s.D(t, t) > 1) out.nontrivial.push_back(s.D(t, t));
  return out;
}

}  // namespace abelcs
