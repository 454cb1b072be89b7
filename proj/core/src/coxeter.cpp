#include "kml/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "kml/error.hpp"

namespace kml {

std::vector<int> mask_members(TypeMask m) {
  std::vector<int> out;
  for (int i = 0; i < kMaxRank; ++i) {
    if (m & (TypeMask{1} << i)) out.push_back(i);
  }
  return out;
}

TypeMask mask_of(const std::vector<int>& members) {
  TypeMask m = 0;
  for (int i : members) m |= TypeMask{1} << i;
  return m;
}

std::string mask_label(TypeMask m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i : mask_members(m)) {
    if (!first) os << ',';
    os << (i + 1);
    first = false;
  }
  os << '}';
  return os.str();
}

GCM GCM::validate(const std::vector<std::vector<int>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw InvalidArgument("gcm: empty matrix");
  if (n > static_cast<std::size_t>(kMaxRank)) throw InvalidArgument("gcm: rank exceeds " + std::to_string(kMaxRank));
  for (const auto& r : rows) {
    if (r.size() != n) throw InvalidArgument("gcm: matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 2) {
      throw InvalidArgument("gcm: diagonal entry a_" + std::to_string(i + 1) + std::to_string(i + 1) + " is not 2");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && rows[i][j] > 0) {
        throw InvalidArgument("gcm: off-diagonal entry a_" + std::to_string(i + 1) + std::to_string(j + 1) + " is positive");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && (rows[i][j] == 0) != (rows[j][i] == 0)) {
        throw InvalidArgument("gcm: a_" + std::to_string(i + 1) + std::to_string(j + 1) + " and a_" +
                              std::to_string(j + 1) + std::to_string(i + 1) + " are not simultaneously zero");
      }
    }
  }
  GCM g;
  g.a_ = rows;
  return g;
}

CoxeterMatrix CoxeterMatrix::from_gcm(const GCM& a) {
  const int n = a.rank();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int prod = a(i, j) * a(j, i);
      switch (prod) {
        case 0: m[i][j] = 2; break;
        case 1: m[i][j] = 3; break;
        case 2: m[i][j] = 4; break;
        case 3: m[i][j] = 6; break;
        default: m[i][j] = kInfinity; break;
      }
    }
  }
  CoxeterMatrix c;
  c.m_ = std::move(m);
  return c;
}

CoxeterMatrix CoxeterMatrix::from_entries(const std::vector<std::vector<int>>& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw InvalidArgument("coxeter: matrix is not square");
    if (m[i][i] != 1) throw InvalidArgument("coxeter: m_ii must be 1");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const int v = m[i][j];
      if (v != 2 && v != 3 && v != 4 && v != 6 && v != kInfinity) {
        throw InvalidArgument("coxeter: entry outside {2,3,4,6,inf}");
      }
      if (m[j][i] != v) throw InvalidArgument("coxeter: matrix is not symmetric");
    }
  }
  CoxeterMatrix c;
  c.m_ = m;
  return c;
}

KmCondition km_condition(const GCM& a) {
  KmCondition out;
  for (int i = 0; i < a.rank(); ++i) {
    for (int j = i + 1; j < a.rank(); ++j) {
      if (a(i, j) * a(j, i) >= 4 && (std::abs(a(i, j)) < 2 || std::abs(a(j, i)) < 2)) {
        out.holds = false;
        out.violations.emplace_back(i, j);
      }
    }
  }
  return out;
}

std::vector<TypeMask> diagram_components(const CoxeterMatrix& m, TypeMask j) {
  std::vector<TypeMask> comps;
  TypeMask seen = 0;
  for (int s : mask_members(j)) {
    if (seen & (TypeMask{1} << s)) continue;
    TypeMask comp = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (comp & (TypeMask{1} << v)) continue;
      comp |= TypeMask{1} << v;
      for (int w : mask_members(j)) {
        if (w != v && m(v, w) != 2 && !(comp & (TypeMask{1} << w))) stack.push_back(w);
      }
    }
    seen |= comp;
    comps.push_back(comp);
  }
  return comps;
}

std::optional<std::string> finite_type_name(const CoxeterMatrix& m, TypeMask component) {
  const auto verts = mask_members(component);
  const int r = static_cast<int>(verts.size());
  if (r == 0) return std::nullopt;
  if (r == 1) return "A1";
  std::map<int, int> degree;
  int edges = 0, n4 = 0, n6 = 0;
  std::pair<int, int> edge4{-1, -1};
  for (int a = 0; a < r; ++a) {
    for (int b = a + 1; b < r; ++b) {
      const int v = m(verts[a], verts[b]);
      if (v == 2) continue;
      if (v == CoxeterMatrix::kInfinity) return std::nullopt;
      ++edges;
      ++degree[verts[a]];
      ++degree[verts[b]];
      if (v == 4) {
        ++n4;
        edge4 = {verts[a], verts[b]};
      }
      if (v == 6) ++n6;
    }
  }
  if (edges != r - 1) return std::nullopt;  // connected with a cycle
  int max_deg = 0, branch = -1;
  for (auto [v, d] : degree) {
    if (d > max_deg) max_deg = d;
    if (d >= 3) branch = v;
  }
  if (n6 > 0) {
    if (r == 2) return "G2";
    return std::nullopt;
  }
  if (n4 > 1) return std::nullopt;
  if (n4 == 1) {
    if (max_deg > 2) return std::nullopt;
    const bool at_end = degree[edge4.first] == 1 || degree[edge4.second] == 1;
    if (at_end) return "B" + std::to_string(r);
    if (r == 4) return "F4";
    return std::nullopt;
  }
  if (max_deg <= 2) return "A" + std::to_string(r);
  int branch_count = 0;
  for (auto [v, d] : degree) {
    if (d > 3) return std::nullopt;
    if (d == 3) ++branch_count;
  }
  if (branch_count != 1) return std::nullopt;
  std::vector<int> arms;
  for (int start : verts) {
    if (start == branch || m(branch, start) == 2) continue;
    int len = 0, prev = branch, cur = start;
    while (true) {
      ++len;
      int next = -1;
      for (int w : verts) {
        if (w != cur && w != prev && m(cur, w) != 2) next = w;
      }
      if (next < 0) break;
      prev = cur;
      cur = next;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms.size() != 3) return std::nullopt;
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(r);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return "E" + std::to_string(r);
  return std::nullopt;
}

bool is_spherical(const CoxeterMatrix& m, TypeMask j) {
  for (TypeMask c : diagram_components(m, j)) {
    if (!finite_type_name(m, c)) return false;
  }
  return true;
}

std::string spherical_type(const CoxeterMatrix& m, TypeMask j) {
  if (j == 0) return "empty";
  std::string out;
  for (TypeMask c : diagram_components(m, j)) {
    auto name = finite_type_name(m, c);
    if (!out.empty()) out += "x";
    out += name ? *name : "inf" + mask_label(c);
  }
  return out;
}

std::optional<std::size_t> SphericalLattice::index_of(TypeMask j) const {
  auto it = std::find(subsets.begin(), subsets.end(), j);
  if (it == subsets.end()) return std::nullopt;
  return static_cast<std::size_t>(it - subsets.begin());
}

SphericalLattice spherical_subsets(const CoxeterMatrix& m) {
  const int n = m.rank();
  SphericalLattice lat;
  std::vector<TypeMask> all;
  for (TypeMask j = 0; j < (TypeMask{1} << n); ++j) {
    if (is_spherical(m, j)) all.push_back(j);
  }
  std::stable_sort(all.begin(), all.end(), [](TypeMask a, TypeMask b) {
    if (mask_size(a) != mask_size(b)) return mask_size(a) < mask_size(b);
    return a < b;
  });
  lat.subsets = all;
  for (std::size_t b = 0; b < all.size(); ++b) {
    for (std::size_t a = 0; a < all.size(); ++a) {
      if (a != b && (all[a] & all[b]) == all[a]) lat.containments.emplace_back(a, b);
    }
  }
  return lat;
}

NerveGraph nerve_graph(const CoxeterMatrix& m) {
  NerveGraph g;
  g.n = m.rank();
  g.adjacent.assign(g.n, std::vector<bool>(g.n, false));
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      g.adjacent[i][j] = i != j && m.finite_edge(i, j);
    }
  }
  return g;
}

FreeProductDecomposition free_product_decomposition(const CoxeterMatrix& m) {
  FreeProductDecomposition out;
  const int n = m.rank();
  TypeMask seen = 0;
  for (int s = 0; s < n; ++s) {
    if (seen & (TypeMask{1} << s)) continue;
    TypeMask comp = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (comp & (TypeMask{1} << v)) continue;
      comp |= TypeMask{1} << v;
      for (int w = 0; w < n; ++w) {
        if (w != v && m.finite_edge(v, w)) stack.push_back(w);
      }
    }
    seen |= comp;
    out.factors.push_back(comp);
  }
  for (TypeMask c : out.factors) {
    if (!is_spherical(m, c)) {
      out.non_spherical = c;
      out.diagnostic = "component " + mask_label(c) + " is not spherical";
      return out;
    }
  }
  if (out.factors.size() < 2) {
    out.diagnostic = "nerve is connected (N=1): W is not a nontrivial free product";
    return out;
  }
  out.ok = true;
  return out;
}

std::int64_t Polynomial::eval(std::int64_t q) const {
  std::int64_t v = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * q + coeffs[k];
  return v;
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0 || coeffs[k] != 1) os << coeffs[k];
    if (k >= 1) os << "q";
    if (k >= 2) os << '^' << k;
  }
  if (first) os << '0';
  return os.str();
}

namespace {

constexpr std::size_t kWeylCap = 5'000'000;

Polynomial poly_product(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return r;
}

// Poincare polynomial of one connected finite-type component. W acts on the
// (finite) root system of a crystallographic Cartan matrix realising m; the
// length of w is the number of positive roots it sends to negative roots.
Polynomial component_poincare(const CoxeterMatrix& m, TypeMask comp) {
  const auto verts = mask_members(comp);
  const int r = static_cast<int>(verts.size());
  std::vector<std::vector<int>> cartan(r, std::vector<int>(r, 0));
  for (int a = 0; a < r; ++a) {
    cartan[a][a] = 2;
    for (int b = a + 1; b < r; ++b) {
      switch (m(verts[a], verts[b])) {
        case 2: break;
        case 3: cartan[a][b] = -1; cartan[b][a] = -1; break;
        case 4: cartan[a][b] = -1; cartan[b][a] = -2; break;
        case 6: cartan[a][b] = -1; cartan[b][a] = -3; break;
        default: throw InvalidArgument("poincare_polynomial: subset is not spherical");
      }
    }
  }
  using Root = std::vector<int>;
  std::map<Root, std::size_t> root_index;
  std::vector<Root> roots;
  auto reflect = [&](const Root& beta, int k) {
    int pairing = 0;
    for (int l = 0; l < r; ++l) pairing += beta[l] * cartan[k][l];
    Root out = beta;
    out[k] -= pairing;
    return out;
  };
  std::deque<Root> queue;
  for (int k = 0; k < r; ++k) {
    Root e(r, 0);
    e[k] = 1;
    queue.push_back(e);
    Root ne(r, 0);
    ne[k] = -1;
    queue.push_back(ne);
  }
  while (!queue.empty()) {
    Root beta = queue.front();
    queue.pop_front();
    if (root_index.count(beta)) continue;
    root_index.emplace(beta, roots.size());
    roots.push_back(beta);
    if (roots.size() > 100000) throw InvalidArgument("poincare_polynomial: subset is not spherical");
    for (int k = 0; k < r; ++k) {
      Root img = reflect(beta, k);
      if (!root_index.count(img)) queue.push_back(img);
    }
  }
  const std::size_t nr = roots.size();
  std::vector<bool> positive(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    positive[i] = std::all_of(roots[i].begin(), roots[i].end(), [](int c) { return c >= 0; });
  }
  std::vector<std::vector<std::uint32_t>> gens(r, std::vector<std::uint32_t>(nr));
  for (int k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < nr; ++i) gens[k][i] = static_cast<std::uint32_t>(root_index.at(reflect(roots[i], k)));
  }
  using Perm = std::vector<std::uint32_t>;
  Perm id(nr);
  for (std::size_t i = 0; i < nr; ++i) id[i] = static_cast<std::uint32_t>(i);
  std::map<Perm, int> seen;
  std::deque<Perm> bfs{id};
  seen.emplace(id, 0);
  Polynomial poly;
  while (!bfs.empty()) {
    Perm w = bfs.front();
    bfs.pop_front();
    std::size_t len = 0;
    for (std::size_t i = 0; i < nr; ++i) {
      if (positive[i] && !positive[w[i]]) ++len;
    }
    if (poly.coeffs.size() <= len) poly.coeffs.resize(len + 1, 0);
    ++poly.coeffs[len];
    for (int k = 0; k < r; ++k) {
      Perm next(nr);
      for (std::size_t i = 0; i < nr; ++i) next[i] = w[gens[k][i]];
      if (seen.emplace(next, 0).second) {
        if (seen.size() > kWeylCap) throw CapExceeded("poincare_polynomial: W_J too large to enumerate");
        bfs.push_back(std::move(next));
      }
    }
  }
  return poly;
}

}  // namespace

Polynomial poincare_polynomial(const CoxeterMatrix& m, TypeMask j) {
  if (!is_spherical(m, j)) throw InvalidArgument("poincare_polynomial: " + mask_label(j) + " is not spherical");
  Polynomial result{{1}};
  for (TypeMask c : diagram_components(m, j)) result = poly_product(result, component_poincare(m, c));
  return result;
}

std::int64_t parabolic_index(const CoxeterMatrix& m, TypeMask j, TypeMask j_sub, std::int64_t q) {
  if ((j_sub & j) != j_sub) throw InvalidArgument("parabolic_index: J' is not a subset of J");
  const std::int64_t top = poincare_polynomial(m, j).eval(q);
  const std::int64_t bottom = poincare_polynomial(m, j_sub).eval(q);
  if (top % bottom != 0) throw InternalError("parabolic_index: Poincare ratio is not an integer");
  return top / bottom;
}

bool right_angled_check(const CoxeterMatrix& m) {
  for (int i = 0; i < m.rank(); ++i) {
    for (int j = 0; j < m.rank(); ++j) {
      if (i != j && m(i, j) != 2 && m(i, j) != CoxeterMatrix::kInfinity) return false;
    }
  }
  return true;
}

bool weyl_infinite_check(const CoxeterMatrix& m) {
  const TypeMask all = m.rank() >= 32 ? ~TypeMask{0} : (TypeMask{1} << m.rank()) - 1;
  return !is_spherical(m, all);
}

}  // namespace kml
