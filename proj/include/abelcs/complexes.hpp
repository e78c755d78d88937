#pragma once

#include <map>
#include <set>
#include <vector>

#include "homology.hpp"

// Small triangulations used by the tests, the CLI and the acceptance runner.
namespace abelcs::complexes {

inline SimplicialComplex boundary_of_simplex(int d) {
  std::vector<Simplex> s;
  for (int skip = 0; skip <= d; ++skip) {
    Simplex f;
    for (int v = 0; v <= d; ++v)
      if (v != skip) f.push_back(v);
    s.push_back(f);
  }
  return SimplicialComplex::from_simplices(d + 1, s);
}

inline SimplicialComplex sphere2() { return boundary_of_simplex(3); }
inline SimplicialComplex sphere3() { return boundary_of_simplex(4); }

// Moebius' 7-vertex torus.
inline SimplicialComplex torus7() {
  std::vector<Simplex> s;
  for (int i = 0; i < 7; ++i) {
    s.push_back({i, (i + 1) % 7, (i + 3) % 7});
    s.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SimplicialComplex::from_simplices(7, s);
}

// Connected sum of two 7-vertex tori along the triangle {0, 1, 3}.
inline SimplicialComplex genus2_surface() {
  auto T = torus7();
  std::vector<Simplex> s;
  const Simplex cut{0, 1, 3};
  auto relabel = [](int v) {
    if (v == 0 || v == 1 || v == 3) return v;
    static const int m[7] = {0, 1, 7, 3, 8, 9, 10};
    return m[v];
  };
  for (auto& t : T.simplices(2)) {
    if (t == cut) continue;
    s.push_back(t);
    s.push_back({relabel(t[0]), relabel(t[1]), relabel(t[2])});
  }
  return SimplicialComplex::from_simplices(11, s);
}

// K x I (layers vertices in a path) or K x S^1 (layers >= 3 in a cycle),
// triangulated by the staircase rule. Vertex (v, j) gets label v * layers + j.
inline SimplicialComplex product_with_interval(const SimplicialComplex& K, int layers, bool periodic) {
  if (layers < 2 || (periodic && layers < 3)) throw ValidationError("product: too few layers");
  std::vector<Simplex> out;
  auto id = [&](int v, int j) { return v * layers + j; };
  const int top = K.dim();
  for (auto& s : K.simplices(top)) {
    const int steps = periodic ? layers : layers - 1;
    for (int j = 0; j < steps; ++j) {
      int a = j, b = (j + 1) % layers;
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex t;
        for (std::size_t r = 0; r <= i; ++r) t.push_back(id(s[r], a));
        for (std::size_t r = i; r < s.size(); ++r) t.push_back(id(s[r], b));
        out.push_back(t);
      }
    }
  }
  return SimplicialComplex::from_simplices(K.n_vertices() * layers, out);
}

inline SimplicialComplex triangle() { return SimplicialComplex::from_simplices(3, {{0, 1, 2}}); }

inline SimplicialComplex solid_torus(int layers = 4) { return product_with_interval(triangle(), layers, true); }

// Planar region: 5 x 3 grid of unit squares with squares (1,1) and (3,1)
// removed, i.e. a disk with two holes.
inline SimplicialComplex two_holed_disk() {
  std::vector<Simplex> s;
  auto id = [](int x, int y) { return x * 4 + y; };
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 3; ++y) {
      if (y == 1 && (x == 1 || x == 3)) continue;
      s.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
      s.push_back({id(x, y), id(x, y + 1), id(x + 1, y + 1)});
    }
  return SimplicialComplex::from_simplices(24, s);
}

inline SimplicialComplex handlebody2() { return product_with_interval(two_holed_disk(), 2, false); }

inline SimplicialComplex surface_times_interval(const SimplicialComplex& S) {
  return product_with_interval(S, 2, false);
}

inline SimplicialComplex s2_times_s1() { return product_with_interval(sphere2(), 3, true); }

// Lens space L(p, q): barycentric subdivision of the join C_m * C_n
// (m = n = 2p) divided by the free Z/p action (a, b) -> (a + 2, b + 2q).
inline SimplicialComplex lens_space(int p, int q) {
  if (p < 2) throw ValidationError("lens space needs p >= 2");
  if (std::gcd(p, q) != 1) throw ValidationError("lens space needs gcd(p, q) = 1");
  const int m = 2 * p, n = 2 * p;
  // join simplices as (A, B), A subset of Z_m, B subset of Z_n, each of size <= 2
  using JS = std::pair<std::vector<int>, std::vector<int>>;
  auto norm = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  auto shift = [&](const JS& s, int t) {
    JS r;
    for (int a : s.first) r.first.push_back(((a + 2 * t) % m + m) % m);
    for (int b : s.second) r.second.push_back(((b + 2 * q * t) % n + n) % n);
    r.first = norm(r.first);
    r.second = norm(r.second);
    return r;
  };
  std::map<JS, int> orbit;  // join simplex -> orbit id
  int n_orbits = 0;
  auto orbit_id = [&](const JS& s) {
    auto it = orbit.find(s);
    if (it != orbit.end()) return it->second;
    const int id = n_orbits++;
    for (int t = 0; t < p; ++t) {
      JS u = shift(s, t);
      if (orbit.count(u)) throw ValidationError("lens action is not free");
      orbit[u] = id;
    }
    return id;
  };
  std::set<Simplex> tets;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b) {
      // tetrahedron {a, a+1} * {b, b+1}; vertices 0,1 on the first circle
      std::vector<std::pair<int, int>> verts = {{0, a}, {0, (a + 1) % m}, {1, b}, {1, (b + 1) % n}};
      std::vector<int> perm = {0, 1, 2, 3};
      do {
        Simplex flag;
        JS cur;
        for (int r = 0; r < 4; ++r) {
          auto [side, x] = verts[perm[r]];
          (side == 0 ? cur.first : cur.second).push_back(x);
          JS c{norm(cur.first), norm(cur.second)};
          flag.push_back(orbit_id(c));
        }
        std::sort(flag.begin(), flag.end());
        if (std::adjacent_find(flag.begin(), flag.end()) != flag.end())
          throw ValidationError("lens quotient is not simplicial");
        tets.insert(flag);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  const std::size_t expected = std::size_t(m) * n * 24 / p;
  if (tets.size() != expected) throw ValidationError("lens quotient identifies distinct simplices");
  auto K = SimplicialComplex::from_simplices(n_orbits, std::vector<Simplex>(tets.begin(), tets.end()));
  if (K.euler_characteristic() != 0) throw ValidationError("lens quotient has nonzero Euler characteristic");
  return K;
}

// ---- cut presentations ----

// X, the cut-open Xcut, and the cut surface Sigma, with vertex maps
// Xcut -> X and the two copies Sigma -> Xcut.
struct CutPresentation {
  SimplicialComplex X, Xcut, Sigma;
  std::vector<int> to_X;
  std::vector<int> copy_a, copy_b;
};

// n x n Kuhn triangulation of T^2 cut along the rows y = 0 and y = n / 2.
inline CutPresentation torus2_cut(int n = 4) {
  if (n < 4 || n % 2) throw ValidationError("torus cut needs even n >= 4");
  const int c = n / 2;
  CutPresentation cp;
  auto idX = [&](int x, int y) { return ((x % n + n) % n) * n + ((y % n + n) % n); };
  std::vector<Simplex> sx;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      sx.push_back({idX(x, y), idX(x + 1, y), idX(x + 1, y + 1)});
      sx.push_back({idX(x, y), idX(x, y + 1), idX(x + 1, y + 1)});
    }
  cp.X = SimplicialComplex::from_simplices(n * n, sx);
  // cut: bottom rows 0..c, top rows c..n, each with its own copies
  auto idB = [&](int x, int y) { return ((x % n + n) % n) * (c + 1) + y; };
  const int offT = n * (c + 1);
  auto idT = [&](int x, int y) { return offT + ((x % n + n) % n) * (n - c + 1) + (y - c); };
  std::vector<Simplex> sc;
  const int nv = offT + n * (n - c + 1);
  cp.to_X.assign(nv, 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y <= c; ++y) cp.to_X[idB(x, y)] = idX(x, y);
    for (int y = c; y <= n; ++y) cp.to_X[idT(x, y)] = idX(x, y);
    for (int y = 0; y < n; ++y) {
      auto id = [&](int xx, int yy) { return y < c ? idB(xx, yy) : idT(xx, yy); };
      sc.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
      sc.push_back({id(x, y), id(x, y + 1), id(x + 1, y + 1)});
    }
  }
  cp.Xcut = SimplicialComplex::from_simplices(nv, sc);
  // Sigma: circle at y = 0 (labels 0..n-1) and at y = c (labels n..2n-1)
  std::vector<Simplex> ss;
  cp.copy_a.assign(2 * n, 0);
  cp.copy_b.assign(2 * n, 0);
  for (int x = 0; x < n; ++x) {
    ss.push_back({x, (x + 1) % n});
    ss.push_back({n + x, n + (x + 1) % n});
    cp.copy_a[x] = idB(x, 0);
    cp.copy_b[x] = idT(x, n);
    cp.copy_a[n + x] = idB(x, c);
    cp.copy_b[n + x] = idT(x, c);
  }
  cp.Sigma = SimplicialComplex::from_simplices(2 * n, ss);
  return cp;
}

// n^3 Kuhn triangulation of T^3 cut along the layer z = 0.
inline CutPresentation torus3_cut(int n = 3) {
  if (n < 3) throw ValidationError("3-torus cut needs n >= 3");
  CutPresentation cp;
  auto w = [&](int a) { return ((a % n) + n) % n; };
  auto idX = [&](int x, int y, int z) { return (w(x) * n + w(y)) * n + w(z); };
  auto idC = [&](int x, int y, int z) { return (w(x) * n + w(y)) * (n + 1) + z; };
  std::vector<Simplex> sx, sc;
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (auto& pr : perms) {
          int p[3] = {x, y, z};
          Simplex tx{idX(p[0], p[1], p[2])}, tc{idC(p[0], p[1], p[2])};
          for (int r = 0; r < 3; ++r) {
            ++p[pr[r]];
            tx.push_back(idX(p[0], p[1], p[2]));
            tc.push_back(idC(p[0], p[1], p[2]));
          }
          sx.push_back(tx);
          sc.push_back(tc);
        }
  cp.X = SimplicialComplex::from_simplices(n * n * n, sx);
  const int nv = n * n * (n + 1);
  cp.Xcut = SimplicialComplex::from_simplices(nv, sc);
  cp.to_X.assign(nv, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z <= n; ++z) cp.to_X[idC(x, y, z)] = idX(x, y, z);
  std::vector<Simplex> ss;
  auto idS = [&](int x, int y) { return w(x) * n + w(y); };
  cp.copy_a.assign(n * n, 0);
  cp.copy_b.assign(n * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      ss.push_back({idS(x, y), idS(x + 1, y), idS(x + 1, y + 1)});
      ss.push_back({idS(x, y), idS(x, y + 1), idS(x + 1, y + 1)});
      cp.copy_a[idS(x, y)] = idC(x, y, 0);
      cp.copy_b[idS(x, y)] = idC(x, y, n);
    }
  cp.Sigma = SimplicialComplex::from_simplices(n * n, ss);
  return cp;
}

}  // namespace abelcs::complexes
