#pragma once

#include <string>
#include <vector>

#include "zlattice.hpp"

namespace abelcs {

// Standard form J = [[0, I], [-I, 0]] on Z^{2g}; coordinates (e_1..e_g, f_1..f_g).
inline IntMatrix symplectic_form(std::size_t g) {
  IntMatrix J(2 * g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    J(i, g + i) = 1;
    J(g + i, i) = -1;
  }
  return J;
}

// omega(X, Y) = X^T J Y, column by column.
template <typename T>
Matrix<T> omega(const Matrix<T>& X, const Matrix<T>& Y) {
  if (X.rows() != Y.rows() || X.rows() % 2) throw ValidationError("omega: bad dimensions");
  const std::size_t g = X.rows() / 2;
  Matrix<T> out(X.cols(), Y.cols());
  for (std::size_t a = 0; a < X.cols(); ++a)
    for (std::size_t b = 0; b < Y.cols(); ++b) {
      T s(0);
      for (std::size_t i = 0; i < g; ++i) s += X(i, a) * Y(g + i, b) - X(g + i, a) * Y(i, b);
      out(a, b) = s;
    }
  return out;
}

struct LagrangianCheck {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

inline LagrangianCheck is_lagrangian(const IntMatrix& gens) {
  if (gens.rows() % 2) throw ValidationError("Lagrangian generators need an even number of rows");
  const std::size_t g = gens.rows() / 2;
  auto s = smith_normal_form(gens);
  if (s.rank != gens.cols()) return {false, "generators not independent"};
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) return {false, "not primitive"};
  if (!omega(gens, gens).is_zero()) return {false, "not isotropic"};
  if (gens.cols() != g) return {false, "rank is not half the dimension"};
  return {};
}

// Rational Lagrangian, stored by the canonical HNF basis of L ∩ Z^{2g}.
struct Lagrangian {
  std::size_t genus = 0;
  IntMatrix gens;  // 2g x g

  static Lagrangian from_gens(const IntMatrix& m) {
    auto chk = is_lagrangian(m);
    if (!chk) throw ValidationError("not Lagrangian: " + chk.diagnostic);
    return canonical(m);
  }
  // Accepts any spanning set of integer vectors; saturates first.
  static Lagrangian from_span(const IntMatrix& m) {
    IntMatrix sat = saturate(m);
    return from_gens(sat);
  }
  static Lagrangian standard(std::size_t g) {
    IntMatrix m(2 * g, g);
    for (std::size_t i = 0; i < g; ++i) m(i, i) = 1;
    return {g, m};
  }
  static Lagrangian dual_standard(std::size_t g) {
    IntMatrix m(2 * g, g);
    for (std::size_t i = 0; i < g; ++i) m(g + i, i) = 1;
    return {g, m};
  }

  friend bool operator==(const Lagrangian& a, const Lagrangian& b) {
    return a.genus == b.genus && a.gens == b.gens;
  }

 private:
  static Lagrangian canonical(const IntMatrix& m) {
    auto h = hermite_normal_form(m);
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < h.rank; ++j) idx.push_back(j);
    return {m.rows() / 2, h.H.cols_subset(idx)};
  }
};

// Symmetrized Gram matrix of Q(x1,x2,x3) = w(x1,x2) + w(x2,x3) + w(x3,x1) on L1+L2+L3.
inline RatMatrix maslov_gram(const Lagrangian& L1, const Lagrangian& L2, const Lagrangian& L3) {
  if (L1.genus != L2.genus || L2.genus != L3.genus) throw ValidationError("maslov: genus mismatch");
  const std::size_t g = L1.genus;
  IntMatrix B(3 * g, 3 * g);
  B.set_block(0, g, omega(L1.gens, L2.gens));
  B.set_block(g, 2 * g, omega(L2.gens, L3.gens));
  B.set_block(2 * g, 0, omega(L3.gens, L1.gens));
  RatMatrix G(3 * g, 3 * g);
  for (std::size_t i = 0; i < 3 * g; ++i)
    for (std::size_t j = 0; j < 3 * g; ++j) G(i, j) = Rat(B(i, j) + B(j, i), 2);
  return G;
}

inline int maslov_index(const Lagrangian& L1, const Lagrangian& L2, const Lagrangian& L3) {
  return signature(maslov_gram(L1, L2, L3));
}

// ---- Sp(2g, Z) ----

inline bool is_symplectic(const IntMatrix& M) {
  if (M.rows() != M.cols() || M.rows() % 2) return false;
  return omega(M, M) == symplectic_form(M.rows() / 2);
}

// M^{-1} = -J M^T J
inline IntMatrix sp_inverse(const IntMatrix& M) {
  IntMatrix J = symplectic_form(M.rows() / 2);
  return -(J * M.transpose() * J);
}

enum class Gen { Alpha, Beta, Gamma };

struct Token {
  Gen kind;
  IntMatrix param;  // A for alpha, B for beta, empty for gamma
  std::size_t genus = 0;

  static Token alpha(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw ValidationError("alpha: A must be square");
    Int d = determinant(A);
    if (d != 1 && d != -1) throw ValidationError("alpha: A must be invertible over Z");
    return {Gen::Alpha, A, A.rows()};
  }
  static Token beta(const IntMatrix& B) {
    if (B.rows() != B.cols() || B != B.transpose()) throw ValidationError("beta: B must be symmetric");
    return {Gen::Beta, B, B.rows()};
  }
  static Token gamma(std::size_t g) { return {Gen::Gamma, IntMatrix(), g}; }

  IntMatrix matrix() const {
    const std::size_t g = genus;
    IntMatrix M = IntMatrix::identity(2 * g);
    switch (kind) {
      case Gen::Alpha: {
        M.set_block(0, 0, param);
        RatMatrix inv = inverse(to_rat(param)).transpose();
        M.set_block(g, g, *to_int(inv));
        break;
      }
      case Gen::Beta:
        M.set_block(0, g, param);
        break;
      case Gen::Gamma:
        M = symplectic_form(g);
        break;
    }
    return M;
  }

  friend bool operator==(const Token& a, const Token& b) {
    return a.kind == b.kind && a.genus == b.genus && a.param == b.param;
  }
};

using SpWord = std::vector<Token>;

inline IntMatrix evaluate(const SpWord& w, std::size_t g) {
  IntMatrix M = IntMatrix::identity(2 * g);
  for (auto& t : w) M = M * t.matrix();
  return M;
}

namespace detail {

inline IntMatrix diag_indicator(std::size_t g, std::size_t from, const Int& on, const Int& off) {
  IntMatrix E(g, g);
  for (std::size_t i = 0; i < g; ++i) E(i, i) = i >= from ? on : off;
  return E;
}

// Partial swap acting as gamma on coordinates from..g-1 and trivially elsewhere,
// spelled with the three generator kinds.
inline SpWord partial_gamma(std::size_t g, std::size_t from) {
  if (from == 0) return {Token::gamma(g)};
  IntMatrix E = diag_indicator(g, from, 1, 0);
  return {Token::beta(E), Token::gamma(g), Token::beta(E), Token::alpha(-IntMatrix::identity(g)),
          Token::gamma(g), Token::beta(E)};
}

inline SpWord simplify(const SpWord& w, std::size_t g) {
  SpWord out;
  for (auto& t : w) {
    if (!out.empty() && out.back().kind == t.kind && t.kind != Gen::Gamma) {
      Token& b = out.back();
      b.param = t.kind == Gen::Alpha ? b.param * t.param : b.param + t.param;
    } else {
      out.push_back(t);
    }
    Token& b = out.back();
    if ((b.kind == Gen::Alpha && b.param == IntMatrix::identity(g)) ||
        (b.kind == Gen::Beta && b.param.is_zero()))
      out.pop_back();
  }
  return out;
}

}  // namespace detail

// Decompose M into alpha/beta/gamma tokens with M = product of the word.
// Works by left-multiplying M down to the identity one symplectic pair at a time.
inline SpWord sp_decompose(const IntMatrix& M0) {
  if (!is_symplectic(M0)) throw ValidationError("sp_decompose: matrix is not symplectic");
  const std::size_t g = M0.rows() / 2;
  IntMatrix M = M0;
  SpWord applied;  // G_1, G_2, ... with ... G_2 G_1 M0 = M

  auto apply = [&](const Token& t) {
    M = t.matrix() * M;
    applied.push_back(t);
  };
  auto apply_word = [&](const SpWord& w) {  // word evaluates to a matrix G; M <- G M
    for (auto it = w.rbegin(); it != w.rend(); ++it) apply(*it);
  };

  for (std::size_t j = 0; j < g; ++j) {
    // column e_j: drive its f-part to zero
    while (true) {
      IntMatrix c(g - j, 1);
      for (std::size_t i = j; i < g; ++i) c(i - j, 0) = M(g + i, j);
      if (c.is_zero()) break;
      // W c = (d, 0, ...), d > 0; alpha(U) sends c to U^{-T} c, so U = W^{-T}
      auto h = hermite_normal_form(c.transpose());
      IntMatrix W = h.U.transpose();
      IntMatrix Wfull = IntMatrix::identity(g);
      Wfull.set_block(j, j, W);
      IntMatrix U = *to_int(inverse(to_rat(Wfull)).transpose());
      apply(Token::alpha(U));
      const Int d = M(g + j, j);
      // beta: a_i += d * s_i, reduce a_i into [0, d)
      IntMatrix S(g, g);
      bool any = false;
      for (std::size_t i = j; i < g; ++i) {
        Int q = -floor_div(M(i, j), d);
        if (q == 0) continue;
        any = true;
        if (i == j) {
          S(j, j) = q;
        } else {
          S(i, j) = q;
          S(j, i) = q;
        }
      }
      if (any) apply(Token::beta(S));
      apply_word(detail::partial_gamma(g, j));
    }
    // now the column is (a; 0) with a primitive on coordinates j..g-1 and
    // zero on 0..j-1; alpha brings it to e_j
    {
      IntMatrix a(g - j, 1);
      for (std::size_t i = j; i < g; ++i) a(i - j, 0) = M(i, j);
      auto h = hermite_normal_form(a.transpose());
      // a^T h.U = (1, 0, ...) so U^{-1} a = e_1 with U^{-1} = h.U^T
      IntMatrix Ui = IntMatrix::identity(g);
      Ui.set_block(j, j, h.U.transpose());
      apply(Token::alpha(Ui));
    }
    // column f_j: its f-part has c_j = 1; clear the rest with alpha fixing e_j
    {
      IntMatrix W = IntMatrix::identity(g);
      for (std::size_t i = j + 1; i < g; ++i) W(i, j) = -M(g + i, g + j);
      IntMatrix U = *to_int(inverse(to_rat(W)).transpose());
      apply(Token::alpha(U));
      IntMatrix S(g, g);
      for (std::size_t i = j; i < g; ++i) {
        S(i, j) = -M(i, g + j);
        S(j, i) = -M(i, g + j);
      }
      apply(Token::beta(S));
    }
  }
  if (M != IntMatrix::identity(2 * g)) throw std::logic_error("sp_decompose: reduction did not reach identity");

  // M0 = G_1^{-1} G_2^{-1} ... G_n^{-1}
  SpWord word;
  for (auto& t : applied) {
    switch (t.kind) {
      case Gen::Alpha:
        word.push_back(Token::alpha(*to_int(inverse(to_rat(t.param)))));
        break;
      case Gen::Beta:
        word.push_back(Token::beta(-t.param));
        break;
      case Gen::Gamma:
        word.push_back(Token::gamma(g));
        word.push_back(Token::alpha(-IntMatrix::identity(g)));
        break;
    }
  }
  return detail::simplify(word, g);
}

inline Lagrangian act_on_lagrangian(const IntMatrix& M, const Lagrangian& L) {
  if (M.rows() != 2 * L.genus) throw ValidationError("act_on_lagrangian: dimension mismatch");
  return Lagrangian::from_span(M * L.gens);
}

// Integer symplectic frame whose first g columns are the canonical generators of L.
inline IntMatrix adapted_frame(const Lagrangian& L) {
  const std::size_t g = L.genus;
  const IntMatrix& W = L.gens;
  IntMatrix J = symplectic_form(g);
  auto T0 = solve_integer(W.transpose() * J, IntMatrix::identity(g));
  if (!T0) throw ValidationError("adapted_frame: generators are not primitive");
  IntMatrix A = omega(*T0, *T0);
  IntMatrix S(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) S(i, j) = A(i, j);
  IntMatrix T = *T0 + W * S;
  // canonical representative: K T zero on and above the diagonal
  IntMatrix KT = left_inverse(W) * T;
  IntMatrix Sp(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) {
      Sp(i, j) = -KT(i, j);
      Sp(j, i) = -KT(i, j);
    }
  T = T + W * Sp;
  return hcat(W, T);
}

}  // namespace abelcs
