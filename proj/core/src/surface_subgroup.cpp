#include <functional>

#include "kml/constructions.hpp"
#include "kml/error.hpp"

namespace kml {

SurfaceSubgroupReport surface_subgroup_hypothesis(const GCM& a, std::optional<std::uint64_t> mirror_order,
                                                  std::uint64_t budget) {
  const auto m = CoxeterMatrix::from_gcm(a);
  SurfaceSubgroupReport out;
  out.right_angled = right_angled_check(m);
  if (!out.right_angled) {
    out.interpretation = "Coxeter matrix is not right-angled; the graph product argument does not apply";
    return out;
  }
  const auto g = nerve_graph(m);
  const int n = g.n;
  std::uint64_t nodes = 0;
  std::vector<int> path;
  std::vector<bool> used(n, false);
  // Extends an induced path from its smallest vertex; closes at length len.
  std::function<bool(int)> extend = [&](int len) -> bool {
    if (++nodes > budget) return false;
    const int p = static_cast<int>(path.size());
    for (int v = path[0] + 1; v < n; ++v) {
      if (used[v] || !g.adjacent[path.back()][v]) continue;
      bool induced = true;
      for (int k = 1; k + 1 < p && induced; ++k) induced = !g.adjacent[path[k]][v];
      const bool closes = g.adjacent[path[0]][v];
      if (!induced || (p > 1 && closes != (p == len - 1))) continue;
      if (p == len - 1 && v < path[1]) continue;  // each cycle once, by direction
      path.push_back(v);
      used[v] = true;
      if (p == len - 1 || extend(len)) return true;
      used[v] = false;
      path.pop_back();
    }
    return false;
  };
  for (int len = 5; len <= n && out.cycle.empty(); ++len) {
    for (int s = 0; s + len <= n && out.cycle.empty(); ++s) {
      path.assign(1, s);
      std::fill(used.begin(), used.end(), false);
      used[s] = true;
      if (extend(len)) out.cycle = path;
      if (nodes > budget) out.exhaustive = false;
    }
  }
  if (out.cycle.empty()) {
    out.interpretation = out.exhaustive ? "no induced cycle of length >= 5 in the nerve"
                                        : "no induced cycle of length >= 5 found within the search budget";
    return out;
  }
  Presentation pres;
  for (int i : out.cycle) pres.generators.push_back("a" + std::to_string(i + 1));
  if (mirror_order) {
    for (const auto& x : pres.generators) pres.relators.push_back(x + "^" + std::to_string(*mirror_order));
  }
  const std::size_t len = out.cycle.size();
  for (std::size_t k = 0; k < len; ++k) {
    const auto& x = pres.generators[k];
    const auto& y = pres.generators[(k + 1) % len];
    pres.relators.push_back(x + "*" + y + "*" + x + "^-1*" + y + "^-1");
  }
  out.presentation = pres;
  out.interpretation = "the graph product of the A_i over this " + std::to_string(len) +
                       "-cycle embeds in the lattice and contains a surface subgroup";
  return out;
}

}  // namespace kml
