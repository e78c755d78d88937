#pragma once

#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "homology.hpp"
#include "intertwine.hpp"
#include "torsion.hpp"

namespace abelcs {

// ---- orientation and layouts ----

// R = diag(I, -I) identifies H^1(-Sigma) with Z^{2g} carrying the standard form.
inline IntMatrix reflection(std::size_t g) {
  IntMatrix R = IntMatrix::identity(2 * g);
  for (std::size_t i = g; i < 2 * g; ++i) R(i, i) = -1;
  return R;
}

inline IntMatrix reflect_frame(const IntMatrix& F) {
  IntMatrix R = reflection(F.rows() / 2);
  return R * F * R;
}

inline Lagrangian reflect(const Lagrangian& L) { return Lagrangian::from_gens(reflection(L.genus) * L.gens); }

// Several surfaces are laid out as (e-blocks of all components, f-blocks of
// all components).
inline std::size_t total_genus(const std::vector<std::size_t>& genera) {
  return std::accumulate(genera.begin(), genera.end(), std::size_t(0));
}

inline std::vector<std::size_t> layout_rows(const std::vector<std::size_t>& genera, std::size_t c) {
  const std::size_t G = total_genus(genera);
  std::size_t off = 0;
  for (std::size_t i = 0; i < c; ++i) off += genera[i];
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < genera[c]; ++r) rows.push_back(off + r);
  for (std::size_t r = 0; r < genera[c]; ++r) rows.push_back(G + off + r);
  return rows;
}

// Block sum of square matrices (one per component) in the layout.
inline IntMatrix layout_block_sum(const std::vector<IntMatrix>& blocks) {
  std::vector<std::size_t> genera;
  for (auto& b : blocks) genera.push_back(b.rows() / 2);
  const std::size_t G = total_genus(genera);
  IntMatrix out(2 * G, 2 * G);
  for (std::size_t c = 0; c < blocks.size(); ++c) {
    auto rows = layout_rows(genera, c);
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < rows.size(); ++b) out(rows[a], rows[b]) = blocks[c](a, b);
  }
  return out;
}

inline IntMatrix component_block(const IntMatrix& F, const std::vector<std::size_t>& genera, std::size_t c) {
  auto rows = layout_rows(genera, c);
  return F.rows_subset(rows).cols_subset(rows);
}

inline Lagrangian lagrangian_sum(const std::vector<Lagrangian>& parts) {
  std::vector<std::size_t> genera;
  for (auto& L : parts) genera.push_back(L.genus);
  const std::size_t G = total_genus(genera);
  IntMatrix gens(2 * G, G);
  std::size_t col = 0;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    auto rows = layout_rows(genera, c);
    for (std::size_t j = 0; j < parts[c].genus; ++j, ++col)
      for (std::size_t a = 0; a < rows.size(); ++a) gens(rows[a], col) = parts[c].gens(a, j);
  }
  return Lagrangian::from_gens(gens);
}

// Graph {(R M eta, eta)} in H^1(-Sigma) + H^1(Sigma).
inline Lagrangian graph_lagrangian(const IntMatrix& M) {
  const std::size_t g = M.rows() / 2;
  const std::vector<std::size_t> genera{g, g};
  IntMatrix RM = reflection(g) * M;
  IntMatrix gens(4 * g, 2 * g);
  auto r0 = layout_rows(genera, 0), r1 = layout_rows(genera, 1);
  for (std::size_t j = 0; j < 2 * g; ++j)
    for (std::size_t a = 0; a < 2 * g; ++a) {
      gens(r0[a], j) = RM(a, j);
      gens(r1[a], j) = a == j ? 1 : 0;
    }
  return Lagrangian::from_gens(gens);
}

// L_Delta: restrictions of classes on Sigma x I to both ends.
inline Lagrangian diagonal_lagrangian(std::size_t g) { return graph_lagrangian(IntMatrix::identity(2 * g)); }

// ---- state vectors ----

struct StateVector {
  HilbertSpace space;
  std::vector<std::size_t> genera;  // boundary components
  std::vector<cplx> amp;

  StateVector(HilbertSpace s, std::vector<std::size_t> g) : space(std::move(s)), genera(std::move(g)), amp(space.dim()) {
    if (total_genus(genera) != space.genus()) throw ValidationError("state vector: component genera do not add up");
  }
};

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
  if (a.amp.size() != b.amp.size()) return INFINITY;
  double d = 0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) d = std::max(d, std::abs(a.amp[i] - b.amp[i]));
  return d;
}

inline StateVector apply(const ExactOperator& U, const StateVector& v, const HilbertSpace& target) {
  if (U.cols != v.amp.size() || U.rows != target.dim()) throw ValidationError("apply: dimension mismatch");
  StateVector out(target, v.genera);
  CMatrix m = U.to_complex();
  for (std::size_t i = 0; i < U.rows; ++i)
    for (std::size_t j = 0; j < U.cols; ++j)
      if (v.amp[j] != cplx(0)) out.amp[i] += m(i, j) * v.amp[j];
  return out;
}

// e^{i pi n / 4} F_{target, source} v, enumerating only the support of v.
inline StateVector transport(const StateVector& v, const HilbertSpace& target, long n = 0) {
  std::vector<std::size_t> support;
  for (std::size_t q = 0; q < v.amp.size(); ++q)
    if (v.amp[q] != cplx(0)) support.push_back(q);
  auto d = bks_components(target, v.space, &support);
  StateVector out(target, v.genera);
  const cplx rot = phase_to_complex(Rat(n, 4));
  const double scale = std::sqrt(to_double(d.scale_sq));
  for (auto& c : d.components) out.amp[c.q2] += scale * phase_to_complex(c.phase) * v.amp[c.q1];
  for (auto& a : out.amp) a *= rot;
  return out;
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
  const long k = a.space.level();
  if (b.space.level() != k) throw ValidationError("tensor: level mismatch");
  auto genera = a.genera;
  genera.insert(genera.end(), b.genera.begin(), b.genera.end());
  StateVector out(HilbertSpace::with_frame(layout_block_sum({a.space.frame(), b.space.frame()}), k), genera);
  for (std::size_t i = 0; i < a.amp.size(); ++i)
    for (std::size_t j = 0; j < b.amp.size(); ++j) out.amp[i * b.amp.size() + j] = a.amp[i] * b.amp[j];
  return out;
}

// Orientation reversal: conjugate sections, read in the reflected frame.
// The leaf q of Sigma becomes the leaf -q of -Sigma.
inline StateVector conjugate(const StateVector& v) {
  StateVector out(HilbertSpace::with_frame(reflect_frame(v.space.frame()), v.space.level()), v.genera);
  for (std::size_t i = 0; i < v.amp.size(); ++i) {
    auto q = v.space.label(i);
    for (auto& x : q) x = -x;
    out.amp[out.space.index(q)] = std::conj(v.amp[i]);
  }
  return out;
}

// Pushforward along a symplectic map of the whole boundary, applied to the
// vector directly (the operator is a phased permutation).
inline StateVector push(const IntMatrix& M, const StateVector& v) {
  if (!is_symplectic(M)) throw ValidationError("pushforward: map is not symplectic");
  HilbertSpace tgt(act_on_lagrangian(M, v.space.lagrangian()), v.space.level());
  StateVector out(tgt, v.genera);
  RatMatrix Mr = to_rat(M);
  for (std::size_t q = 0; q < v.amp.size(); ++q) {
    if (v.amp[q] == cplx(0)) continue;
    auto loc = tgt.locate(Mr * v.space.base_point(q));
    if (!loc) throw std::logic_error("pushforward: image point is not on a BS leaf");
    out.amp[loc->index] += v.amp[q] * phase_to_complex(-loc->phase);
  }
  return out;
}

// Contraction of the components i (a copy of -Sigma) and j (Sigma): the
// hermitian pairing sum_q <v'_{-q} (x) v_q, .>. Their frames must be mirror images.
inline StateVector trace_pair(const StateVector& v, std::size_t i, std::size_t j) {
  const auto& genera = v.genera;
  const std::size_t nc = genera.size();
  if (i >= nc || j >= nc || i == j) throw ValidationError("trace: bad component indices");
  if (genera[i] != genera[j]) throw ValidationError("trace: components have different genus");
  const IntMatrix& F = v.space.frame();
  // F must not mix the rows of i, of j and of the remaining components
  auto rows_i = layout_rows(genera, i), rows_j = layout_rows(genera, j);
  std::vector<int> group(F.rows(), 0);
  for (auto r : rows_i) group[r] = 1;
  for (auto r : rows_j) group[r] = 2;
  for (std::size_t a = 0; a < F.rows(); ++a)
    for (std::size_t b = 0; b < F.cols(); ++b)
      if (group[a] != group[b] && F(a, b) != 0) throw ValidationError("trace: frame does not split along components");
  if (reflect_frame(F.rows_subset(rows_j).cols_subset(rows_j)) != F.rows_subset(rows_i).cols_subset(rows_i))
    throw ValidationError("trace: frames of the two copies do not match");
  std::vector<std::size_t> rest_genera, rest_idx;
  for (std::size_t c = 0; c < nc; ++c)
    if (c != i && c != j) {
      rest_genera.push_back(genera[c]);
      rest_idx.push_back(c);
    }
  std::vector<std::size_t> rest_rows(2 * total_genus(rest_genera));
  for (std::size_t r = 0; r < rest_idx.size(); ++r) {
    auto src = layout_rows(genera, rest_idx[r]), dst = layout_rows(rest_genera, r);
    for (std::size_t a = 0; a < src.size(); ++a) rest_rows[dst[a]] = src[a];
  }
  const long k = v.space.level();
  StateVector out(HilbertSpace::with_frame(F.rows_subset(rest_rows).cols_subset(rest_rows), k), rest_genera);
  // label offsets per component
  std::vector<std::size_t> off(nc + 1, 0);
  for (std::size_t c = 0; c < nc; ++c) off[c + 1] = off[c] + genera[c];
  for (std::size_t idx = 0; idx < v.amp.size(); ++idx) {
    if (v.amp[idx] == cplx(0)) continue;
    auto q = v.space.label(idx);
    bool diag = true;
    for (std::size_t r = 0; r < genera[i]; ++r)
      if (((q[off[i] + r] + q[off[j] + r]) % k) != 0) diag = false;
    if (!diag) continue;
    std::vector<long> qr;
    for (auto c : rest_idx)
      for (std::size_t r = 0; r < genera[c]; ++r) qr.push_back(q[off[c] + r]);
    out.amp[out.space.index(qr)] += v.amp[idx];
  }
  return out;
}

// ---- extended 3-manifolds ----

struct ECobordism {
  StateVector Z;  // standard vector in H(dX, L_X)
  Lagrangian L;
  long n = 0;
  std::string descriptor;

  const Lagrangian& LX() const { return Z.space.lagrangian(); }
  long level() const { return Z.space.level(); }
};

// e^{i pi n / 4} F_{L, L_X} Z_X in the given space polarized by L.
inline StateVector assign_vector(const ECobordism& X, const HilbertSpace& target) {
  if (!(target.lagrangian() == X.L)) throw ValidationError("assign_vector: target space is not polarized by L");
  StateVector v = transport(X.Z, target, X.n);
  v.genera = X.Z.genera;
  return v;
}

// Split space for a boundary with several components; component c is
// polarized by parts[c], read in the reflected frame when mirrored[c].
inline HilbertSpace split_space(const std::vector<Lagrangian>& parts, const std::vector<bool>& mirrored, long k) {
  std::vector<IntMatrix> blocks;
  for (std::size_t c = 0; c < parts.size(); ++c)
    blocks.push_back(mirrored.at(c) ? reflect_frame(adapted_frame(reflect(parts[c]))) : adapted_frame(parts[c]));
  return HilbertSpace::with_frame(layout_block_sum(blocks), k);
}

inline StateVector assign_vector(const ECobordism& X) { return assign_vector(X, HilbertSpace(X.L, X.level())); }

inline Rat handlebody_exponent(std::size_t g) { return Rat(long(g) - 1, 4); }

inline double power_of_level(long k, const Rat& e) { return std::pow(double(k), to_double(e)); }

// H_g with L_X spanned by the e-classes, Z = k^{(g-1)/4} v_0.
inline ECobordism handlebody(std::size_t g, long k) {
  StateVector Z(HilbertSpace::with_frame(IntMatrix::identity(2 * g), k), {g});
  Z.amp[0] = power_of_level(k, handlebody_exponent(g));
  return {Z, Lagrangian::standard(g), 0, "handlebody " + std::to_string(g)};
}

// Sigma x I with boundary (-Sigma) + Sigma, Z = k^{g/2} v_0 on L_Delta.
inline ECobordism cylinder(std::size_t g, long k) {
  Lagrangian D = diagonal_lagrangian(g);
  StateVector Z(HilbertSpace(D, k), {g, g});
  Z.amp[0] = power_of_level(k, Rat(long(g), 2));
  return {Z, D, 0, "cylinder " + std::to_string(g)};
}

// Block from a triangulated pair; needs Tors H^2(X) = 0 so that the image
// of the moduli space is the single leaf through the trivial connection.
inline ECobordism from_simplicial(const SimplicialPair& P, long k) {
  auto prof = cohomology(P);
  if (prof.absolute.torsion_order(2) != 1)
    throw ValidationError("standard vector needs Chern-Simons data when H^2(X) has torsion");
  auto bl = boundary_lagrangian(P);
  StateVector Z(HilbertSpace(bl.L, k), bl.genera());
  Z.amp[0] = power_of_level(k, m_exponent(prof)) * torsion_half_density_integral(P, prof);
  return {Z, bl.L, 0, "simplicial"};
}

inline ECobordism with_lagrangian(ECobordism X, const Lagrangian& L, long n) {
  X.L = L;
  X.n = n;
  return X;
}

inline ECobordism disjoint_union(const ECobordism& a, const ECobordism& b) {
  return {tensor(a.Z, b.Z), lagrangian_sum({a.L, b.L}), mod8(a.n + b.n), a.descriptor + " + " + b.descriptor};
}

inline ECobordism reverse(const ECobordism& X) {
  return {conjugate(X.Z), reflect(X.L), mod8(-X.n), "-(" + X.descriptor + ")"};
}

// ---- e-3-morphisms ----

// A diffeomorphism of 3-manifolds seen through its boundary action (M, m)
// from (dX, L) to (dX', L').
struct EMorphism3 {
  EMorphism2 boundary;
};

// n' = n + m + tau(L_{X'}, L', M L)
inline ECobordism apply(const EMorphism3& phi, const ECobordism& X) {
  const auto& b = phi.boundary;
  if (!(X.L == b.source)) throw ValidationError("e-3-morphism: source Lagrangian does not match");
  StateVector Z = push(b.M, X.Z);
  Z.genera = X.Z.genera;
  int tau = maslov_index(Z.space.lagrangian(), b.target, act_on_lagrangian(b.M, b.source));
  return {Z, b.target, mod8(X.n + b.m + tau), X.descriptor};
}

inline bool framing_constraint_holds(const EMorphism3& phi, const ECobordism& X, const ECobordism& Y) {
  const auto& b = phi.boundary;
  int tau = maslov_index(Y.LX(), Y.L, act_on_lagrangian(b.M, X.L));
  return mod8(Y.n) == mod8(X.n + b.m + tau);
}

inline EMorphism3 compose_e3(const EMorphism3& second, const EMorphism3& first) {
  return {compose(second.boundary, first.boundary)};
}

// M acting on one boundary component, identity on the others.
inline IntMatrix on_component(const IntMatrix& M, const std::vector<std::size_t>& genera, std::size_t c) {
  std::vector<IntMatrix> blocks;
  for (std::size_t i = 0; i < genera.size(); ++i)
    blocks.push_back(i == c ? M : IntMatrix::identity(2 * genera[i]));
  return layout_block_sum(blocks);
}

// Symplectic permutation of boundary components: new component r is old perm[r].
inline IntMatrix component_permutation(const std::vector<std::size_t>& genera, const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> ng;
  for (auto p : perm) ng.push_back(genera.at(p));
  const std::size_t G = total_genus(genera);
  IntMatrix P(2 * G, 2 * G);
  for (std::size_t r = 0; r < perm.size(); ++r) {
    auto to = layout_rows(ng, r), from = layout_rows(genera, perm[r]);
    for (std::size_t a = 0; a < to.size(); ++a) P(to[a], from[a]) = 1;
  }
  return P;
}

inline ECobordism permute_components(const ECobordism& X, const std::vector<std::size_t>& perm) {
  IntMatrix P = component_permutation(X.Z.genera, perm);
  std::vector<std::size_t> ng;
  for (auto p : perm) ng.push_back(X.Z.genera.at(p));
  ECobordism Y = X;
  Y.Z = push(P, X.Z);
  Y.Z.genera = ng;
  Y.L = act_on_lagrangian(P, X.L);
  return Y;
}

// ---- gluing ----

struct GlueResult {
  ECobordism X;  // (X, L, n) with Z the standard vector of X
  int tau = 0;   // tau(L~, L_{X^cut}, L_X + L_Delta)
};

// Glues component i (a copy of -Sigma) of the cut manifold to component j
// (Sigma) by the identity. The cut Lagrangian must split as
// L + R L_Sigma + L_Sigma; then Tr_Sigma Z_{(X^cut, L~, n~)} = Z_{(X, L, n)}
// with n = n~ + tau(L~, L_{X^cut}, L_X + L_Delta).
inline GlueResult glue(const ECobordism& Xcut0, std::size_t i, std::size_t j) {
  const auto& genera0 = Xcut0.Z.genera;
  const std::size_t nc = genera0.size();
  if (i >= nc || j >= nc || i == j) throw ValidationError("glue: bad component indices");
  if (genera0[i] != genera0[j]) throw ValidationError("glue: factorization mismatch, genera differ");
  std::vector<std::size_t> perm;
  for (std::size_t c = 0; c < nc; ++c)
    if (c != i && c != j) perm.push_back(c);
  perm.push_back(i);
  perm.push_back(j);
  ECobordism Xcut = permute_components(Xcut0, perm);
  const auto& genera = Xcut.Z.genera;
  const std::size_t g = genera.back();
  const std::vector<std::size_t> ygen(genera.begin(), genera.end() - 2);
  const std::size_t GY = total_genus(ygen);
  const long k = Xcut.level();

  std::vector<std::size_t> yl(2 * GY);  // rows of Y, in the Y layout
  for (std::size_t c = 0; c + 2 < nc; ++c) {
    auto src = layout_rows(genera, c), dst = layout_rows(ygen, c);
    for (std::size_t a = 0; a < src.size(); ++a) yl[dst[a]] = src[a];
  }
  auto ri = layout_rows(genera, nc - 2), rj = layout_rows(genera, nc - 1);

  // split L~
  auto part = [&](const std::vector<std::size_t>& rows, std::size_t dim) -> Lagrangian {
    if (dim == 0) return Lagrangian{0, IntMatrix(0, 0)};
    IntMatrix s = Xcut.L.gens.rows_subset(rows);
    if (rank(s) != dim) throw ValidationError("glue: cut Lagrangian does not split along the boundary");
    return Lagrangian::from_span(s);
  };
  Lagrangian LY = part(yl, GY), LSigma = part(rj, g);
  std::vector<Lagrangian> split{reflect(LSigma), LSigma};
  if (GY) split.insert(split.begin(), LY);
  if (!(lagrangian_sum(split) == Xcut.L))
    throw ValidationError("glue: cut Lagrangian is not of the form L + L_Sigma + L_Sigma");

  // L_X: classes of X^cut whose two Sigma restrictions agree, restricted to Y
  const IntMatrix& G = Xcut.LX().gens;
  IntMatrix C = G.rows_subset(ri) - reflection(g) * G.rows_subset(rj);
  IntMatrix ker = C.rows() ? kernel_basis(C) : IntMatrix::identity(G.cols());
  Lagrangian LX{0, IntMatrix(0, 0)};
  if (GY) {
    IntMatrix img = (G * ker).rows_subset(yl);
    if (rank(img) != GY) throw ValidationError("glue: glued Lagrangian is not half-dimensional");
    LX = Lagrangian::from_span(img);
  }

  std::vector<IntMatrix> blocks{reflect_frame(adapted_frame(LSigma)), adapted_frame(LSigma)};
  std::vector<Lagrangian> tparts{reflect(LSigma), LSigma}, rparts{diagonal_lagrangian(g)};
  if (GY) {
    blocks.insert(blocks.begin(), adapted_frame(LX));
    tparts.insert(tparts.begin(), LX);
    rparts.insert(rparts.begin(), LX);
  }
  HilbertSpace target = HilbertSpace::with_frame(layout_block_sum(blocks), k);
  const Lagrangian Lref = lagrangian_sum(rparts);

  // Z_X = e^{-i pi tau'/4} Tr F Z^cut with tau' computed for L_X in place of L
  const int tau_std = maslov_index(lagrangian_sum(tparts), Xcut.LX(), Lref);
  StateVector w = transport(Xcut.Z, target, -tau_std);
  w.genera = genera;
  StateVector t = trace_pair(w, ygen.size(), ygen.size() + 1);
  t.genera = ygen;

  const int tau = maslov_index(Xcut.L, Xcut.LX(), Lref);
  return {ECobordism{t, LY, mod8(Xcut.n + tau), "glued(" + Xcut0.descriptor + ")"}, tau};
}

// Gluing through an e-2-morphism (h, m) from component i to component j:
// reparametrize component j by h, add m, then glue by the identity.
inline GlueResult glue(const ECobordism& Xcut, std::size_t i, std::size_t j, const EMorphism2& hm) {
  const auto& genera = Xcut.Z.genera;
  if (j >= genera.size() || hm.M.rows() != 2 * genera[j]) throw ValidationError("glue: gluing map has wrong genus");
  IntMatrix B = on_component(hm.M, genera, j);
  ECobordism moved = Xcut;
  moved.Z = push(B, Xcut.Z);
  moved.Z.genera = genera;
  moved.n = mod8(Xcut.n + hm.m);
  return glue(moved, i, j);
}

// Value of a closed e-3-manifold, e^{i pi n / 4} Z_X.
inline cplx closed_value(const ECobordism& X) {
  if (X.Z.space.genus() != 0) throw ValidationError("manifold is not closed");
  return X.Z.amp[0] * phase_to_complex(Rat(X.n, 4));
}

// ---- Heegaard words and closed invariants ----

struct SurgeryWord {
  std::size_t genus = 1;
  SpWord tokens;
  std::vector<long> framings;  // one per token (default 0)

  IntMatrix matrix() const { return evaluate(tokens, genus); }
};

// U(t_1, m_1) o ... o U(t_n, m_n) as a single morphism of (Sigma, L).
inline EMorphism2 word_morphism(const SurgeryWord& w, const Lagrangian& L) {
  EMorphism2 acc = EMorphism2::identity(L);
  for (std::size_t r = w.tokens.size(); r-- > 0;) {
    long m = r < w.framings.size() ? w.framings[r] : 0;
    acc = compose(EMorphism2::on(L, w.tokens[r].matrix(), m), acc);
  }
  return acc;
}

struct ClosedInvariant {
  cplx value;       // <Z_H, U(word) Z_H>
  long n = 0;       // framing of the glued manifold
  std::size_t components = 0;
  std::vector<Rat> component_phases;  // e^{i pi phi_c}, one per intersection component
  double component_weight = 0;        // common modulus per component
  cplx unframed() const { return value * phase_to_complex(Rat(-n, 4)); }
};

inline ClosedInvariant closed_invariant(const SurgeryWord& w, long k) {
  check_level(k);
  const std::size_t g = w.genus;
  for (auto& t : w.tokens)
    if (t.genus != g) throw ValidationError("surgery word: token genus does not match");
  Lagrangian LH = Lagrangian::standard(g);
  EMorphism2 x = word_morphism(w, LH);
  HilbertSpace S = HilbertSpace::with_frame(IntMatrix::identity(2 * g), k);
  ExactOperator U = mapping_class_operator(x, S, S);
  ClosedInvariant out;
  const double zh = power_of_level(k, handlebody_exponent(g));
  out.component_phases = U.at(0, 0);
  out.components = out.component_phases.size();
  out.component_weight = zh * zh * U.scale();
  cplx s = 0;
  for (auto& ph : out.component_phases) s += phase_to_complex(ph);
  out.value = out.component_weight * s;
  Lagrangian LD = diagonal_lagrangian(g);
  int tau0 = maslov_index(lagrangian_sum({reflect(LH), LH}), lagrangian_sum({reflect(LH), act_on_lagrangian(x.M, LH)}), LD);
  out.n = mod8(x.m + tau0);
  return out;
}

// Same manifold through the gluing engine: -H_g and the reparametrized H_g
// glued along Sigma, with L~ = R L_Sigma + L_Sigma and n~ = m.
inline ECobordism heegaard_gluing(const SurgeryWord& w, long k, const Lagrangian& LSigma) {
  Lagrangian LH = Lagrangian::standard(w.genus);
  ECobordism H = handlebody(w.genus, k);
  EMorphism2 x = word_morphism(w, LH);
  ECobordism cut = disjoint_union(reverse(H), H);
  cut = with_lagrangian(cut, lagrangian_sum({reflect(LSigma), LSigma}), 0);
  return glue(cut, 0, 1, x).X;
}

struct MappingTorusInvariant {
  cplx value;  // Tr U(h, m)
  long n = 0;
  cplx unframed() const { return value * phase_to_complex(Rat(-n, 4)); }
};

// Self-gluing of the cylinder through (h, m); n = m + tau(L + L, L_Delta, L_h).
inline MappingTorusInvariant mapping_torus_invariant(const IntMatrix& M, long m, long k) {
  check_level(k);
  const std::size_t g = M.rows() / 2;
  Lagrangian L = Lagrangian::standard(g);
  ExactOperator U = mapping_class_operator(M, m, L, k);
  CMatrix u = U.to_complex();
  MappingTorusInvariant out;
  for (std::size_t i = 0; i < u.rows(); ++i) out.value += u(i, i);
  int tau = maslov_index(lagrangian_sum({reflect(L), L}), diagonal_lagrangian(g), graph_lagrangian(M));
  out.n = mod8(m + tau);
  return out;
}

// Gluing-engine evaluation of the same mapping torus.
inline ECobordism mapping_torus_gluing(const IntMatrix& M, long m, long k, const Lagrangian& LSigma) {
  const std::size_t g = M.rows() / 2;
  ECobordism C = with_lagrangian(cylinder(g, k), lagrangian_sum({reflect(LSigma), LSigma}), 0);
  return glue(C, 0, 1, EMorphism2{M, m, LSigma, LSigma}).X;
}

// ---- direct evaluation of closed manifolds ----

// |Tors H^2| sqrt(T_X), the torsion mass of the moduli space with integer
// cohomology bases.
inline double closed_torsion_integral(const SimplicialComplex& K, const CohomologyProfile& prof) {
  double T = to_double(torsion(cochain_complex(K)).value);
  return prof.absolute.torsion_order(2).convert_to<double>() * std::sqrt(T);
}

// k^{m_X} sum_c e^{i pi k S_c} (torsion_integral / #components)
inline cplx direct_closed_formula(const CohomologyProfile& prof, const std::vector<Rat>& cs_values,
                                  double torsion_integral, long k) {
  check_level(k);
  Int count = prof.absolute.torsion_order(2);
  if (Int(cs_values.size()) != count)
    throw ValidationError("number of Chern-Simons values does not match |Tors H^2|");
  const double mass = torsion_integral / double(cs_values.size());
  cplx s = 0;
  for (auto& S : cs_values) s += phase_to_complex(Rat(k) * S);
  return power_of_level(k, m_exponent(prof)) * mass * s;
}

// Chern-Simons values read off from the component decomposition of a
// closed invariant: k S_c = phi_c - n/4 (mod 2).
inline std::vector<Rat> cs_values_from(const ClosedInvariant& inv, long k) {
  std::vector<Rat> out;
  for (auto& ph : inv.component_phases) out.push_back(rmod((ph - Rat(inv.n, 4)) / Rat(k), Rat(2, k)));
  return out;
}

// Heegaard word S T^p S of the lens space L(p, 1).
inline SurgeryWord lens_word(long p) {
  SurgeryWord w;
  w.genus = 1;
  w.tokens = {Token::gamma(1), Token::beta(IntMatrix{{p}}), Token::gamma(1)};
  return w;
}

// (1/k) |sum_{q mod k} e^{i pi p q^2 / k}|
inline double lens_gauss_oracle(long p, long k) {
  cplx s = 0;
  for (long q = 0; q < k; ++q) s += phase_to_complex(Rat(p * q * q, k));
  return std::abs(s) / double(k);
}

}  // namespace abelcs
