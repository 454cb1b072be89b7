#include "kml/surface.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "kml/error.hpp"
#include "union_find.hpp"

namespace kml {

namespace {

using Perm = std::vector<std::uint32_t>;

bool is_permutation_of(const Perm& p, std::uint32_t m) {
  if (p.size() != m) return false;
  std::vector<bool> seen(m, false);
  for (auto x : p) {
    if (x >= m || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

Perm inverse(const Perm& p) {
  Perm inv(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

bool fixed_point_free_involution(const Perm& p) {
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    if (p[i] == i || p[p[i]] != i) return false;
  }
  return true;
}

int mod(int a, int n) { return ((a % n) + n) % n; }

}  // namespace

std::int64_t SurfaceComplex::euler_characteristic() const {
  return static_cast<std::int64_t>(vertex_count) - edge_count() + face_count();
}

std::uint32_t SurfaceComplex::white_of(std::uint32_t black, int side) const { return m + pairing[side][black]; }

std::uint32_t SurfaceComplex::black_of(std::uint32_t white_face, int side) const {
  const auto& p = pairing[side];
  return static_cast<std::uint32_t>(std::find(p.begin(), p.end(), white_face - m) - p.begin());
}

std::uint32_t SurfaceComplex::edge_of(std::uint32_t face, int side) const {
  const std::uint32_t b = face < m ? face : black_of(face, side);
  return b * n + side;
}

bool SurfaceComplex::left_of(std::uint32_t edge, std::uint32_t face) const {
  const std::uint32_t b = edge / n;
  const int side = static_cast<int>(edge % n);
  if (face != b && face != white_of(b, side)) throw InvalidArgument("left_of: face does not contain the edge");
  const auto [g, dir] = edge_geodesic[edge];
  const bool forward = dir * geodesics[g].sign > 0;
  return (face == b) == forward;
}

std::vector<std::vector<std::uint32_t>> SurfaceComplex::rotation_system() const {
  std::vector<std::vector<std::uint32_t>> out(vertex_count);
  for (std::uint32_t b = 0; b < m; ++b) {
    for (int c = 0; c < n; ++c) {
      auto& cyc = out[vertex_at(b, c)];
      if (!cyc.empty()) continue;
      // Alternate: black crosses side c, white crosses side c-1.
      std::uint32_t x = b;
      do {
        cyc.push_back(x);
        const std::uint32_t w = white_of(x, c);
        cyc.push_back(w);
        x = black_of(w, mod(c - 1, n));
      } while (x != b && cyc.size() <= 2 * face_count());
    }
  }
  return out;
}

IntMatrix SurfaceComplex::boundary2() const {
  IntMatrix d(edge_count(), std::vector<std::int64_t>(face_count(), 0));
  for (std::uint32_t f = 0; f < face_count(); ++f) {
    for (int k = 0; k < n; ++k) d[edge_of(f, k)][f] += f < m ? 1 : -1;
  }
  return d;
}

IntMatrix SurfaceComplex::boundary1() const {
  IntMatrix d(vertex_count, std::vector<std::int64_t>(edge_count(), 0));
  for (std::uint32_t b = 0; b < m; ++b) {
    for (int k = 0; k < n; ++k) {
      d[vertex_at(b, mod(k + 1, n))][b * n + k] += 1;
      d[vertex_at(b, k)][b * n + k] -= 1;
    }
  }
  return d;
}

std::vector<std::int64_t> SurfaceComplex::chain(const Geodesic& h) const {
  std::vector<std::int64_t> c(edge_count(), 0);
  for (const auto& t : h.edges) c[t.edge] += h.sign * t.dir;
  return c;
}

SurfaceComplex SurfaceComplex::from_pairings(int n, std::vector<std::vector<std::uint32_t>> pairing) {
  if (n < 3) throw InvalidArgument("surface: polygons need at least 3 sides");
  if (pairing.size() != static_cast<std::size_t>(n) || pairing[0].empty()) {
    throw InvalidArgument("surface: need one nonempty pairing per side");
  }
  SurfaceComplex s;
  s.n = n;
  s.m = static_cast<std::uint32_t>(pairing[0].size());
  for (const auto& p : pairing) {
    if (!is_permutation_of(p, s.m)) throw InvalidArgument("surface: side pairing is not a permutation");
  }
  s.pairing = std::move(pairing);

  detail::UnionFind uf(static_cast<std::size_t>(s.face_count()) * n);
  for (std::uint32_t b = 0; b < s.m; ++b) {
    for (int k = 0; k < n; ++k) {
      const std::uint32_t w = s.white_of(b, k);
      uf.unite(b * n + k, w * n + k);
      uf.unite(b * n + mod(k + 1, n), w * n + mod(k + 1, n));
    }
  }
  std::vector<std::uint32_t> id(uf.parent.size(), UINT32_MAX);
  for (std::uint32_t c = 0; c < uf.parent.size(); ++c) {
    auto& r = id[uf.find(c)];
    if (r == UINT32_MAX) r = s.vertex_count++;
    s.corner_vertex.push_back(r);
  }

  // sigma_k = pi_{k-1}^{-1} pi_k moves a black face across the vertex at corner k.
  std::vector<Perm> sigma(n, Perm(s.m));
  for (int k = 0; k < n; ++k) {
    const Perm prev_inv = inverse(s.pairing[mod(k - 1, n)]);
    for (std::uint32_t b = 0; b < s.m; ++b) sigma[k][b] = prev_inv[s.pairing[k][b]];
  }
  s.edge_geodesic.assign(s.edge_count(), {UINT32_MAX, 0});
  for (int i = 0; i < n; ++i) {
    for (std::uint32_t b0 = 0; b0 < s.m; ++b0) {
      if (s.edge_geodesic[b0 * n + i].first != UINT32_MAX) continue;
      Geodesic h;
      h.type = i;
      const auto g = static_cast<std::uint32_t>(s.geodesics.size());
      std::uint32_t b = b0;
      do {
        const std::uint32_t back = sigma[mod(i + 1, n)][b];
        for (auto [face, dir] : {std::pair{b, 1}, std::pair{back, -1}}) {
          const std::uint32_t e = face * n + i;
          if (s.edge_geodesic[e].first != UINT32_MAX) throw InternalError("surface: geodesic revisits an edge");
          s.edge_geodesic[e] = {g, dir};
          h.edges.push_back({e, dir});
        }
        b = sigma[i][back];
      } while (b != b0);
      s.geodesics.push_back(std::move(h));
    }
  }
  return s;
}

Diagnostics validate(const SurfaceComplex& s) {
  Diagnostics d;
  const int n = s.n;
  std::vector<int> incidences(s.edge_count(), 0);
  for (std::uint32_t f = 0; f < s.face_count(); ++f) {
    for (int k = 0; k < n; ++k) ++incidences[s.edge_of(f, k)];
  }
  for (std::uint32_t e = 0; e < s.edge_count(); ++e) {
    if (incidences[e] != 2) d.fail("edge " + std::to_string(e) + " lies in " + std::to_string(incidences[e]) + " faces");
  }
  // Types: all corners at a vertex carry the same corner index.
  std::vector<int> corner_type(s.vertex_count, -1);
  std::vector<int> corners(s.vertex_count, 0);
  for (std::uint32_t f = 0; f < s.face_count(); ++f) {
    for (int c = 0; c < n; ++c) {
      const auto v = s.vertex_at(f, c);
      ++corners[v];
      if (corner_type[v] == -1) corner_type[v] = c;
      if (corner_type[v] != c) d.fail("vertex " + std::to_string(v) + " mixes corner types");
    }
  }
  const auto rot = s.rotation_system();
  for (std::uint32_t v = 0; v < s.vertex_count; ++v) {
    if (corners[v] != 4 || rot[v].size() != 4) d.fail("link of vertex " + std::to_string(v) + " is not a 4-cycle");
  }
  // Coherent orientation: every edge column of the boundary is +1 and -1,
  // and the boundary of the boundary vanishes.
  const auto d2 = s.boundary2();
  const auto d1 = s.boundary1();
  for (std::uint32_t e = 0; e < s.edge_count(); ++e) {
    std::int64_t pos = 0, neg = 0;
    for (auto x : d2[e]) (x > 0 ? pos : neg) += x;
    if (pos != 1 || neg != -1) d.fail("edge " + std::to_string(e) + " is not oriented coherently");
  }
  for (std::uint32_t v = 0; v < s.vertex_count; ++v) {
    for (std::uint32_t f = 0; f < s.face_count(); ++f) {
      std::int64_t x = 0;
      for (std::uint32_t e = 0; e < s.edge_count(); ++e) x += d1[v][e] * d2[e][f];
      if (x != 0) d.fail("boundary of face " + std::to_string(f) + " is not closed");
    }
  }
  detail::UnionFind uf(s.face_count());
  for (std::uint32_t b = 0; b < s.m; ++b) {
    for (int k = 0; k < n; ++k) uf.unite(b, s.white_of(b, k));
  }
  for (std::uint32_t f = 0; f < s.face_count(); ++f) {
    if (uf.find(f) != 0) {
      d.fail("surface is disconnected");
      break;
    }
  }
  if (4 * s.euler_characteristic() != static_cast<std::int64_t>(s.face_count()) * (4 - n)) {
    d.fail("Euler characteristic " + std::to_string(s.euler_characteristic()) + " differs from F(1 - n/4)");
  }
  // Geodesics: constant type, closed, every edge exactly once, and at each
  // vertex only the two types of its corner pass.
  std::vector<int> covered(s.edge_count(), 0);
  for (std::size_t g = 0; g < s.geodesics.size(); ++g) {
    const auto& h = s.geodesics[g];
    for (const auto& t : h.edges) {
      ++covered[t.edge];
      if (static_cast<int>(t.edge % n) != h.type) d.fail("geodesic " + std::to_string(g) + " changes type");
      const auto& v = s.corner_vertex;
      const std::uint32_t b = t.edge / n;
      for (int c : {h.type, mod(h.type + 1, n)}) {
        const int ct = corner_type[v[b * n + c]];
        if (ct != h.type && ct != mod(h.type + 1, n)) d.fail("geodesic " + std::to_string(g) + " crosses a bad vertex");
      }
    }
    const auto c = s.chain(h);
    for (std::uint32_t v = 0; v < s.vertex_count; ++v) {
      std::int64_t x = 0;
      for (std::uint32_t e = 0; e < s.edge_count(); ++e) x += d1[v][e] * c[e];
      if (x != 0) {
        d.fail("geodesic " + std::to_string(g) + " is not closed");
        break;
      }
    }
  }
  for (std::uint32_t e = 0; e < s.edge_count(); ++e) {
    if (covered[e] != 1) d.fail("edge " + std::to_string(e) + " lies on " + std::to_string(covered[e]) + " geodesics");
  }
  return d;
}

bool is_nullhomologous(const SurfaceComplex& s, const std::vector<std::vector<std::int64_t>>& cycles) {
  std::vector<std::int64_t> z(s.edge_count(), 0);
  for (const auto& c : cycles) {
    if (c.size() != z.size()) throw InvalidArgument("is_nullhomologous: chain has the wrong length");
    for (std::size_t e = 0; e < z.size(); ++e) z[e] += c[e];
  }
  const auto d1 = s.boundary1();
  for (const auto& c : cycles) {
    for (const auto& row : d1) {
      std::int64_t x = 0;
      for (std::size_t e = 0; e < c.size(); ++e) x += row[e] * c[e];
      if (x != 0) throw InvalidArgument("is_nullhomologous: chain is not a cycle");
    }
  }
  return ColumnEchelon(s.boundary2()).solve(z).has_value();
}

std::optional<std::vector<int>> orient_geodesics(const SurfaceComplex& s) {
  const std::size_t count = s.geodesics.size();
  if (count == 0) return std::vector<int>{};
  if (count > 31) throw BudgetExceeded("orient_geodesics: " + std::to_string(count) + " geodesics exceed the sign search");
  const ColumnEchelon ech(s.boundary2());
  std::vector<std::vector<std::int64_t>> base;
  for (const auto& h : s.geodesics) {
    auto g = h;
    g.sign = 1;
    base.push_back(s.chain(g));
  }
  std::vector<int> sign(count, 1);
  auto total = [&] {
    std::vector<std::int64_t> z(s.edge_count(), 0);
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t e = 0; e < z.size(); ++e) z[e] += sign[k] * base[k][e];
    }
    return z;
  };
  auto zero = [](const std::vector<std::int64_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
  };
  // With unit pivots the residual is linear and vanishes exactly on boundaries,
  // so a Gray code walk can update it one geodesic at a time.
  const bool linear = ech.unit_pivots();
  std::vector<std::vector<std::int64_t>> res;
  std::vector<std::int64_t> sum;
  if (linear) {
    for (const auto& c : base) res.push_back(ech.residual(c));
    sum.assign(res[0].size(), 0);
    for (const auto& r : res) {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r[i];
    }
  }
  const std::uint64_t steps = std::uint64_t{1} << (count - 1);
  for (std::uint64_t step = 0; step < steps; ++step) {
    if (step > 0) {
      const std::size_t k = 1 + static_cast<std::size_t>(__builtin_ctzll(step));
      if (linear) {
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] -= 2 * sign[k] * res[k][i];
      }
      sign[k] = -sign[k];
    }
    const bool hit = linear ? zero(sum) : ech.solve(total()).has_value();
    if (hit && ech.solve(total())) return sign;
  }
  return std::nullopt;
}

TessellationSearch find_tessellation(int n, std::uint32_t faces, std::uint64_t budget) {
  if (n < 3) throw InvalidArgument("tessellation: polygons need at least 3 sides");
  if (faces == 0 || faces % 2 != 0) throw InvalidArgument("tessellation: the number of faces must be even and positive");
  const std::uint32_t m = faces / 2;
  TessellationSearch out;
  std::vector<Perm> pi(n, Perm(m));
  for (std::uint32_t b = 0; b < m; ++b) pi[0][b] = b;

  auto leaf = [&]() -> bool {
    if (!fixed_point_free_involution(pi[n - 1])) return false;  // sigma_0 = pi_{n-1}^{-1}
    detail::UnionFind uf(2 * m);
    for (int k = 0; k < n; ++k) {
      for (std::uint32_t b = 0; b < m; ++b) uf.unite(b, m + pi[k][b]);
    }
    for (std::uint32_t f = 0; f < 2 * m; ++f) {
      if (uf.find(f) != 0) return false;
    }
    ++out.candidates;
    auto s = SurfaceComplex::from_pairings(n, pi);
    if (!validate(s).valid) return false;
    auto signs = orient_geodesics(s);
    if (!signs) {
      ++out.homology_rejected;
      return false;
    }
    for (std::size_t g = 0; g < signs->size(); ++g) s.geodesics[g].sign = (*signs)[g];
    out.surface = std::move(s);
    return true;
  };

  // Level k picks sigma_k, a fixed-point-free involution built by pairing the
  // smallest free point with each larger free point in turn.
  Perm sigma(m, UINT32_MAX);
  std::function<bool(int)> level;
  std::function<bool(int)> pair_up = [&](int k) -> bool {
    std::uint32_t a = 0;
    while (a < m && sigma[a] != UINT32_MAX) ++a;
    if (a == m) {
      if (++out.nodes > budget) {
        throw BudgetExceeded("tessellation search exhausted its budget of " + std::to_string(budget) + " nodes");
      }
      for (std::uint32_t b = 0; b < m; ++b) pi[k][b] = pi[k - 1][sigma[b]];
      const Perm saved = sigma;
      if (level(k + 1)) return true;
      sigma = saved;
      return false;
    }
    for (std::uint32_t c = a + 1; c < m; ++c) {
      if (sigma[c] != UINT32_MAX) continue;
      sigma[a] = c;
      sigma[c] = a;
      if (pair_up(k)) return true;
      sigma[a] = sigma[c] = UINT32_MAX;
    }
    return false;
  };
  level = [&](int k) -> bool {
    if (k == n) return leaf();
    std::fill(sigma.begin(), sigma.end(), UINT32_MAX);
    return pair_up(k);
  };
  level(1);
  return out;
}

std::string to_dot(const SurfaceComplex& s, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (std::uint32_t v = 0; v < s.vertex_count; ++v) os << "  v" << v << ";\n";
  for (std::uint32_t e = 0; e < s.edge_count(); ++e) {
    const std::uint32_t b = e / s.n;
    const int k = static_cast<int>(e % s.n);
    os << "  v" << s.vertex_at(b, k) << " -- v" << s.vertex_at(b, (k + 1) % s.n) << " [label=\"e" << e << " type "
       << k + 1 << " h" << s.edge_geodesic[e].first << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace kml
