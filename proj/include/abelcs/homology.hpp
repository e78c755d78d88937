#pragma once

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "symplectic.hpp"

namespace abelcs {

using Simplex = std::vector<int>;

// Simplicial complex of dimension <= 3 given by its maximal simplices; all
// faces are generated and stored sorted. Simplices are oriented by increasing
// vertex order.
class SimplicialComplex {
 public:
  SimplicialComplex() : faces_(4), index_(4) {}

  static SimplicialComplex from_simplices(std::size_t n_vertices, const std::vector<Simplex>& simplices) {
    SimplicialComplex K;
    K.n_ = n_vertices;
    std::set<Simplex> seen[4];
    for (auto s : simplices) {
      std::sort(s.begin(), s.end());
      if (s.empty() || s.size() > 4) throw ValidationError("simplex of unsupported dimension");
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ValidationError("simplex with repeated vertex");
      for (int v : s)
        if (v < 0 || std::size_t(v) >= n_vertices) throw ValidationError("vertex index out of range");
      const std::size_t d = s.size();
      for (unsigned mask = 1; mask < (1u << d); ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < d; ++i)
          if (mask & (1u << i)) f.push_back(s[i]);
        seen[f.size() - 1].insert(f);
      }
    }
    for (std::size_t d = 0; d < 4; ++d) {
      K.faces_[d].assign(seen[d].begin(), seen[d].end());
      for (std::size_t i = 0; i < K.faces_[d].size(); ++i) K.index_[d][K.faces_[d][i]] = i;
    }
    return K;
  }

  std::size_t n_vertices() const { return n_; }
  int dim() const {
    for (int d = 3; d >= 0; --d)
      if (!faces_[d].empty()) return d;
    return -1;
  }
  std::size_t count(std::size_t d) const { return d < 4 ? faces_[d].size() : 0; }
  const std::vector<Simplex>& simplices(std::size_t d) const { return faces_.at(d); }
  bool contains(const Simplex& s) const {
    return !s.empty() && s.size() <= 4 && index_[s.size() - 1].count(s);
  }
  std::size_t index_of(const Simplex& s) const { return index_.at(s.size() - 1).at(s); }

  std::vector<Simplex> maximal() const {
    std::vector<Simplex> out;
    for (std::size_t d = 0; d < 4; ++d)
      for (auto& s : faces_[d]) {
        bool covered = false;
        if (d + 1 < 4)
          for (auto& t : faces_[d + 1])
            if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
              covered = true;
              break;
            }
        if (!covered) out.push_back(s);
      }
    return out;
  }

  long euler_characteristic() const {
    long chi = 0;
    for (std::size_t d = 0; d < 4; ++d) chi += (d % 2 ? -1 : 1) * long(faces_[d].size());
    return chi;
  }

  // delta^q : C^q -> C^{q+1}, (delta f)(s) = sum_i (-1)^i f(s minus vertex i)
  IntMatrix coboundary(std::size_t q) const { return coboundary_restricted(q, nullptr); }

  // Same, restricted to simplices outside `A` (relative cochains).
  IntMatrix coboundary_restricted(std::size_t q, const SimplicialComplex* A) const {
    auto rows = kept(q + 1, A), cols = kept(q, A);
    IntMatrix d(rows.size(), cols.size());
    if (q + 1 >= 4) return d;
    std::map<std::size_t, std::size_t> colpos;
    for (std::size_t j = 0; j < cols.size(); ++j) colpos[cols[j]] = j;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Simplex& s = faces_[q + 1][rows[i]];
      for (std::size_t r = 0; r < s.size(); ++r) {
        Simplex f;
        for (std::size_t t = 0; t < s.size(); ++t)
          if (t != r) f.push_back(s[t]);
        auto it = colpos.find(index_[q].at(f));
        if (it != colpos.end()) d(i, it->second) += (r % 2 ? -1 : 1);
      }
    }
    return d;
  }

  // indices of q-simplices not in A
  std::vector<std::size_t> kept(std::size_t q, const SimplicialComplex* A) const {
    std::vector<std::size_t> out;
    if (q >= 4) return out;
    for (std::size_t i = 0; i < faces_[q].size(); ++i)
      if (!A || !A->contains(faces_[q][i])) out.push_back(i);
    return out;
  }

  // Subcomplex generated by the given simplices (same vertex labels).
  SimplicialComplex sub(const std::vector<Simplex>& gens) const {
    for (auto& s : gens) {
      Simplex t = s;
      std::sort(t.begin(), t.end());
      if (!contains(t)) throw ValidationError("subcomplex simplex is not in the complex");
    }
    return from_simplices(n_, gens);
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<Simplex>> faces_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

struct SimplicialPair {
  SimplicialComplex X, A;
};

// Codimension-one faces lying in exactly one top simplex, for a pure complex.
inline SimplicialComplex topological_boundary(const SimplicialComplex& X) {
  const int d = X.dim();
  std::vector<Simplex> out;
  if (d <= 0) return SimplicialComplex::from_simplices(X.n_vertices(), out);
  std::map<Simplex, int> cnt;
  for (auto& s : X.simplices(d))
    for (std::size_t r = 0; r < s.size(); ++r) {
      Simplex f;
      for (std::size_t t = 0; t < s.size(); ++t)
        if (t != r) f.push_back(s[t]);
      ++cnt[f];
    }
  for (auto& [f, c] : cnt) {
    if (c > 2) throw ValidationError("complex is not a manifold: face in more than two top simplices");
    if (c == 1) out.push_back(f);
  }
  return SimplicialComplex::from_simplices(X.n_vertices(), out);
}

inline SimplicialPair make_pair_with_boundary(const SimplicialComplex& X) { return {X, topological_boundary(X)}; }

// ---- cohomology ----

struct CohomologyGroups {
  std::array<std::size_t, 4> betti{};
  std::array<std::vector<Int>, 4> torsion;  // invariant factors > 1 of H^q
  Int torsion_order(std::size_t q) const {
    Int o = 1;
    for (auto& t : torsion[q]) o *= t;
    return o;
  }
};

struct CohomologyProfile {
  CohomologyGroups absolute;
  std::optional<CohomologyGroups> relative;   // H^q(X, dX)
  std::optional<CohomologyGroups> boundary;   // H^q(dX)
  long euler_simplices = 0;
};

// ranks n_q and coboundaries d^q : C^q -> C^{q+1}, q = 0..3
inline CohomologyGroups cohomology_of(const std::array<std::size_t, 4>& n, const std::array<IntMatrix, 4>& d) {
  CohomologyGroups G;
  std::array<InvariantFactors, 4> f;
  for (std::size_t q = 0; q < 4; ++q) f[q] = invariant_factors(d[q]);
  for (std::size_t q = 0; q < 4; ++q) {
    std::size_t r_out = f[q].rank, r_in = q ? f[q - 1].rank : 0;
    G.betti[q] = n[q] - r_out - r_in;
    if (q) G.torsion[q] = f[q - 1].nontrivial;
  }
  return G;
}

inline CohomologyGroups cohomology_groups(const SimplicialComplex& K, const SimplicialComplex* A = nullptr) {
  std::array<std::size_t, 4> n{};
  std::array<IntMatrix, 4> d;
  for (std::size_t q = 0; q < 4; ++q) {
    n[q] = K.kept(q, A).size();
    d[q] = K.coboundary_restricted(q, A);
  }
  return cohomology_of(n, d);
}

inline CohomologyProfile cohomology(const SimplicialComplex& K) {
  CohomologyProfile p;
  p.absolute = cohomology_groups(K);
  p.euler_simplices = K.euler_characteristic();
  return p;
}

inline CohomologyProfile cohomology(const SimplicialPair& P) {
  CohomologyProfile p;
  p.absolute = cohomology_groups(P.X);
  p.relative = cohomology_groups(P.X, &P.A);
  p.boundary = cohomology_groups(P.A);
  p.euler_simplices = P.X.euler_characteristic();
  return p;
}

inline long euler_from_betti(const CohomologyGroups& G) {
  return long(G.betti[0]) - long(G.betti[1]) + long(G.betti[2]) - long(G.betti[3]);
}

inline Rat m_exponent(const CohomologyProfile& p) {
  const auto& a = p.absolute;
  if (p.relative && p.boundary && p.boundary->betti[0] > 0) {
    const auto& r = *p.relative;
    return Rat(long(a.betti[1] + r.betti[1]) - long(a.betti[0] + r.betti[0]), 4);
  }
  return Rat(long(a.betti[1]) - long(a.betti[0]), 2);
}

inline long fiber_dimension_q(const CohomologyProfile& p) {
  if (!p.relative || !p.boundary) throw ValidationError("fiber dimension needs a pair");
  const auto &a = p.absolute, &r = *p.relative, &b = *p.boundary;
  return long(r.betti[1]) - long(b.betti[0]) + long(a.betti[0]) - long(r.betti[0]);
}

// 1/2 dim H^1(dX) = b1(X) - b1(X,dX) + b0(X,dX) - b0(X) + b0(dX)
inline bool lefschetz_identity_holds(const CohomologyProfile& p) {
  if (!p.relative || !p.boundary) return false;
  const auto &a = p.absolute, &r = *p.relative, &b = *p.boundary;
  long lhs = long(a.betti[1]) - long(r.betti[1]) + long(r.betti[0]) - long(a.betti[0]) + long(b.betti[0]);
  return 2 * lhs == long(b.betti[1]);
}

inline bool torsion_duality_holds(const CohomologyProfile& p) {
  if (!p.relative) return false;
  return p.relative->torsion[2] == p.absolute.torsion[2];
}

// ---- integral cohomology bases ----

// Integer cocycles h whose classes form a basis of H^q / torsion, for the
// complex ... -> C^{q-1} --d_prev--> C^q --d_next--> ...
struct IntegralCohomology {
  IntMatrix K;     // kernel lattice basis of d_next
  IntMatrix Uinv;  // Smith transform of the coboundary coordinates
  std::size_t r = 0;
  IntMatrix h;

  // class coordinates of an integer cocycle in the basis h (modulo torsion)
  IntMatrix coordinates(const IntMatrix& z) const {
    auto y = solve_integer(K, z);
    if (!y) throw ValidationError("not a cocycle");
    IntMatrix yp = Uinv * *y;
    return yp.block(r, 0, yp.rows() - r, yp.cols());
  }
};

inline IntegralCohomology integral_cohomology(const IntMatrix& d_prev, const IntMatrix& d_next, std::size_t n_q) {
  IntegralCohomology c;
  c.K = d_next.rows() ? kernel_basis(d_next) : IntMatrix::identity(n_q);
  const std::size_t z = c.K.cols();
  if (d_prev.cols() == 0 || d_prev.is_zero()) {
    c.Uinv = IntMatrix::identity(z);
    c.r = 0;
    c.h = c.K;
    return c;
  }
  auto Y = solve_integer(c.K, d_prev);
  if (!Y) throw std::logic_error("coboundaries are not in the cocycle lattice");
  auto s = smith_normal_form(*Y);
  c.r = s.rank;
  c.Uinv = s.Uinv;
  std::vector<std::size_t> idx;
  for (std::size_t j = s.rank; j < z; ++j) idx.push_back(j);
  c.h = c.K * s.U.cols_subset(idx);
  return c;
}

// ---- boundary Lagrangian ----

namespace detail {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

inline Simplex drop(const Simplex& s, std::size_t r) {
  Simplex f;
  for (std::size_t t = 0; t < s.size(); ++t)
    if (t != r) f.push_back(s[t]);
  return f;
}

}  // namespace detail

// Coefficients (+-1) of a relative fundamental class on the top simplices of a
// 3-complex; each connected piece is oriented so its first tetrahedron is +1.
inline std::vector<int> fundamental_class(const SimplicialPair& P) {
  const auto& X = P.X;
  if (X.dim() != 3) throw ValidationError("fundamental class needs a 3-dimensional complex");
  const auto& tets = X.simplices(3);
  detail::UnionFind uf(tets.size());
  std::map<Simplex, std::vector<std::pair<std::size_t, int>>> inc;  // interior triangle -> (tet, sign)
  for (std::size_t t = 0; t < tets.size(); ++t)
    for (std::size_t r = 0; r < 4; ++r) {
      Simplex f = detail::drop(tets[t], r);
      if (P.A.contains(f)) continue;
      inc[f].push_back({t, r % 2 ? -1 : 1});
    }
  std::vector<int> sign(tets.size(), 0);
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(tets.size());  // neighbour, required relative sign
  for (auto& [f, v] : inc) {
    if (v.size() != 2) throw ValidationError("interior triangle is not shared by exactly two tetrahedra");
    // c_a s_a + c_b s_b = 0  =>  c_b = -c_a s_a / s_b
    int rel = -v[0].second * v[1].second;
    adj[v[0].first].push_back({v[1].first, rel});
    adj[v[1].first].push_back({v[0].first, rel});
  }
  for (std::size_t start = 0; start < tets.size(); ++start) {
    if (sign[start]) continue;
    sign[start] = 1;
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      auto t = stack.back();
      stack.pop_back();
      for (auto [u, rel] : adj[t]) {
        int want = sign[t] * rel;
        if (!sign[u]) {
          sign[u] = want;
          stack.push_back(u);
        } else if (sign[u] != want) {
          throw ValidationError("complex is not orientable");
        }
      }
    }
  }
  return sign;
}

struct BoundaryComponent {
  std::size_t genus = 0;
  std::vector<std::size_t> edges;  // indices into X's edge list
  IntMatrix basis;                 // cocycles on `edges`: columns e_1..e_g, f_1..f_g
  IntegralCohomology coh;
  IntMatrix to_symplectic;         // coordinates in coh.h -> symplectic coordinates
};

struct BoundaryLagrangian {
  Lagrangian L;                            // in the layout (e-blocks, then f-blocks)
  std::vector<BoundaryComponent> components;
  std::vector<std::size_t> genera() const {
    std::vector<std::size_t> g;
    for (auto& c : components) g.push_back(c.genus);
    return g;
  }
};

// Integer symplectic basis for a unimodular antisymmetric Gram matrix G:
// returns P with P^T G P = J.
inline IntMatrix symplectic_basis(const IntMatrix& G) {
  const std::size_t n = G.rows();
  if (n % 2) throw ValidationError("odd-dimensional symplectic lattice");
  std::vector<IntMatrix> as, bs;
  IntMatrix V = IntMatrix::identity(n);
  auto w = [&](const IntMatrix& x, const IntMatrix& y) { return (x.transpose() * G * y)(0, 0); };
  while (V.cols() > 0) {
    IntMatrix a = V.col(0);
    // b = sum x_j v_j with sum x_j w(a, v_j) = 1
    Int gcur = 0;
    IntMatrix b(n, 1);
    for (std::size_t j = 0; j < V.cols(); ++j) {
      Int c = w(a, V.col(j));
      if (c == 0) continue;
      auto [gg, x, y] = ext_gcd(gcur, c);
      b = x * b + y * V.col(j);
      gcur = gg;
    }
    if (gcur != 1) throw ValidationError("intersection form is not unimodular");
    as.push_back(a);
    bs.push_back(b);
    IntMatrix proj(n, V.cols());
    for (std::size_t j = 0; j < V.cols(); ++j) {
      IntMatrix v = V.col(j);
      IntMatrix p = v - w(v, b) * a + w(v, a) * b;
      proj.set_block(0, j, p);
    }
    auto h = hermite_normal_form(proj);
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < h.rank; ++j) idx.push_back(j);
    V = h.H.cols_subset(idx);
  }
  const std::size_t g = as.size();
  IntMatrix P(n, n);
  for (std::size_t i = 0; i < g; ++i) {
    P.set_block(0, i, as[i]);
    P.set_block(0, g + i, bs[i]);
  }
  return P;
}

// Places per-component vectors (2 g_c rows each, e then f) into the
// layout (e-blocks of all components, then f-blocks).
inline IntMatrix to_layout(const std::vector<IntMatrix>& parts, const std::vector<std::size_t>& genera) {
  std::size_t G = 0;
  for (auto g : genera) G += g;
  const std::size_t cols = parts.empty() ? 0 : parts[0].cols();
  IntMatrix out(2 * G, cols);
  std::size_t off = 0;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const std::size_t g = genera[c];
    out.set_block(off, 0, parts[c].block(0, 0, g, cols));
    out.set_block(G + off, 0, parts[c].block(g, 0, g, cols));
    off += g;
  }
  return out;
}

inline BoundaryLagrangian boundary_lagrangian(const SimplicialPair& P) {
  const auto& X = P.X;
  const auto& A = P.A;
  if (A.dim() != 2) throw ValidationError("boundary is not a surface");
  auto sign = fundamental_class(P);
  // induced orientation of boundary triangles
  std::map<Simplex, int> eps;
  const auto& tets = X.simplices(3);
  for (std::size_t t = 0; t < tets.size(); ++t)
    for (std::size_t r = 0; r < 4; ++r) {
      Simplex f = detail::drop(tets[t], r);
      if (A.contains(f)) eps[f] += sign[t] * (r % 2 ? -1 : 1);
    }
  for (auto& tri : A.simplices(2))
    if (std::abs(eps[tri]) != 1) throw ValidationError("boundary is not a closed surface");

  // connected components of the boundary
  detail::UnionFind uf(X.n_vertices());
  for (auto& e : A.simplices(1)) uf.unite(e[0], e[1]);
  std::map<int, std::size_t> comp_of_root;
  for (auto& v : A.simplices(0))
    if (!comp_of_root.count(uf.find(v[0]))) comp_of_root.emplace(uf.find(v[0]), comp_of_root.size());
  const std::size_t nc = comp_of_root.size();
  std::vector<std::vector<Simplex>> cv(nc), ce(nc), ct(nc);
  for (auto& v : A.simplices(0)) cv[comp_of_root[uf.find(v[0])]].push_back(v);
  for (auto& e : A.simplices(1)) ce[comp_of_root[uf.find(e[0])]].push_back(e);
  for (auto& t : A.simplices(2)) ct[comp_of_root[uf.find(t[0])]].push_back(t);

  BoundaryLagrangian out;
  for (std::size_t c = 0; c < nc; ++c) {
    BoundaryComponent bc;
    std::map<Simplex, std::size_t> vpos, epos;
    for (std::size_t i = 0; i < cv[c].size(); ++i) vpos[cv[c][i]] = i;
    for (std::size_t i = 0; i < ce[c].size(); ++i) {
      epos[ce[c][i]] = i;
      bc.edges.push_back(X.index_of(ce[c][i]));
    }
    IntMatrix d0(ce[c].size(), cv[c].size()), d1(ct[c].size(), ce[c].size());
    for (std::size_t i = 0; i < ce[c].size(); ++i) {
      d0(i, vpos[{ce[c][i][1]}]) += 1;
      d0(i, vpos[{ce[c][i][0]}]) -= 1;
    }
    for (std::size_t i = 0; i < ct[c].size(); ++i)
      for (std::size_t r = 0; r < 3; ++r) d1(i, epos[detail::drop(ct[c][i], r)]) += (r % 2 ? -1 : 1);
    bc.coh = integral_cohomology(d0, d1, ce[c].size());
    const IntMatrix& H = bc.coh.h;
    const std::size_t n = H.cols();
    if (n % 2) throw ValidationError("boundary component has odd first Betti number");
    IntMatrix G(n, n);
    for (auto& t : ct[c]) {
      std::size_t e01 = epos[{t[0], t[1]}], e12 = epos[{t[1], t[2]}];
      int s = eps[t];
      for (std::size_t i = 0; i < n; ++i) {
        if (H(e01, i) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) G(i, j) += s * H(e01, i) * H(e12, j);
      }
    }
    if (G != -G.transpose()) throw std::logic_error("cup pairing is not antisymmetric");
    IntMatrix Psym = symplectic_basis(G);
    bc.genus = n / 2;
    bc.basis = H * Psym;
    bc.to_symplectic = *to_int(inverse(to_rat(Psym)));
    out.components.push_back(std::move(bc));
  }

  // restriction of integral H^1(X) classes
  IntMatrix d0X = X.coboundary(0), d1X = X.coboundary(1);
  auto cohX = integral_cohomology(d0X, d1X, X.count(1));
  std::vector<IntMatrix> parts;
  for (auto& bc : out.components) {
    IntMatrix z = cohX.h.rows_subset(bc.edges);
    parts.push_back(bc.to_symplectic * bc.coh.coordinates(z));
  }
  auto genera = out.genera();
  std::size_t G = 0;
  for (auto g : genera) G += g;
  IntMatrix R = to_layout(parts, genera);
  if (rank(R) != G) throw ValidationError("restriction image is not half-dimensional");
  out.L = Lagrangian::from_span(R);
  return out;
}

}  // namespace abelcs
