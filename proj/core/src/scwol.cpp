#include "kml/scwol.hpp"

#include <numeric>
#include <sstream>

#include "kml/error.hpp"

namespace kml {

std::uint32_t Scwol::add_vertex(std::optional<TypeMask> type, std::string name) {
  types_.push_back(type);
  if (name.empty()) name = type ? mask_label(*type) : "v" + std::to_string(names_.size());
  names_.push_back(std::move(name));
  return static_cast<std::uint32_t>(types_.size() - 1);
}

std::uint32_t Scwol::add_edge(std::uint32_t from, std::uint32_t to) {
  if (from >= vertex_count() || to >= vertex_count()) throw InvalidArgument("scwol: edge endpoint out of range");
  edges_.push_back({from, to});
  return static_cast<std::uint32_t>(edges_.size() - 1);
}

void Scwol::set_composite(std::uint32_t a, std::uint32_t b, std::uint32_t ab) { compose_[{a, b}] = ab; }

std::optional<std::uint32_t> Scwol::compose(std::uint32_t a, std::uint32_t b) const {
  auto it = compose_.find({a, b});
  if (it == compose_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> Scwol::edges_into(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < edges_.size(); ++a) {
    if (edges_[a].t == v) out.push_back(a);
  }
  return out;
}

std::vector<std::uint32_t> Scwol::edges_from(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < edges_.size(); ++a) {
    if (edges_[a].i == v) out.push_back(a);
  }
  return out;
}

std::optional<std::uint32_t> Scwol::find_edge(std::uint32_t from, std::uint32_t to) const {
  for (std::uint32_t a = 0; a < edges_.size(); ++a) {
    if (edges_[a].i == from && edges_[a].t == to) return a;
  }
  return std::nullopt;
}

Scwol Scwol::without_edge(std::uint32_t a) const {
  if (a >= edges_.size()) throw InvalidArgument("scwol: no edge " + std::to_string(a));
  Scwol out;
  out.types_ = types_;
  out.names_ = names_;
  for (std::uint32_t e = 0; e < edges_.size(); ++e) {
    if (e != a) out.edges_.push_back(edges_[e]);
  }
  auto shift = [a](std::uint32_t e) { return e > a ? e - 1 : e; };
  for (const auto& [pair, ab] : compose_) {
    if (pair.first == a || pair.second == a || ab == a) continue;
    out.compose_[{shift(pair.first), shift(pair.second)}] = shift(ab);
  }
  return out;
}

Diagnostics validate(const Scwol& s) {
  Diagnostics d;
  const auto& e = s.edges();
  for (std::uint32_t a = 0; a < e.size(); ++a) {
    if (e[a].i == e[a].t) d.fail("edge " + std::to_string(a) + " is a loop");
    const auto& ti = s.type(e[a].i);
    const auto& tt = s.type(e[a].t);
    if (ti && tt && !((*ti & *tt) == *ti && *ti != *tt)) {
      d.fail("edge " + std::to_string(a) + " does not strictly increase type: " + mask_label(*ti) + " -> " +
             mask_label(*tt));
    }
  }
  for (const auto& [pair, ab] : s.compositions()) {
    const auto [a, b] = pair;
    const std::string tag = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (a >= e.size() || b >= e.size() || ab >= e.size()) {
      d.fail("composition " + tag + " refers to a missing edge");
      continue;
    }
    if (e[a].i != e[b].t) d.fail("composition declared for non-composable pair " + tag);
    if (e[ab].i != e[b].i || e[ab].t != e[a].t) d.fail("composite of " + tag + " has wrong endpoints");
  }
  // Closure: every composable pair has a composite.
  for (std::uint32_t b = 0; b < e.size(); ++b) {
    for (std::uint32_t a = 0; a < e.size(); ++a) {
      if (e[a].i == e[b].t && !s.compose(a, b)) {
        d.fail("composable pair (" + std::to_string(a) + "," + std::to_string(b) + ") has no composite");
      }
    }
  }
  // Associativity on composable triples.
  for (const auto& [ab_pair, ab] : s.compositions()) {
    const auto [a, b] = ab_pair;
    for (const auto& [bc_pair, bc] : s.compositions()) {
      if (bc_pair.first != b) continue;
      const std::uint32_t c = bc_pair.second;
      const auto left = s.compose(ab, c);
      const auto right = s.compose(a, bc);
      if (!left || !right || *left != *right) {
        d.fail("associativity fails on (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
               ")");
      }
    }
  }
  return d;
}

Scwol build_chamber_scwol(const SphericalLattice& lattice) {
  Scwol s;
  for (TypeMask j : lattice.subsets) s.add_vertex(j);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> edge_of;
  for (const auto& [lo, hi] : lattice.containments) {
    const auto from = static_cast<std::uint32_t>(lo);
    const auto to = static_cast<std::uint32_t>(hi);
    edge_of[{from, to}] = s.add_edge(from, to);
  }
  for (const auto& [bt, b] : edge_of) {
    for (const auto& [at, a] : edge_of) {
      if (at.first != bt.second) continue;
      s.set_composite(a, b, edge_of.at({bt.first, at.second}));
    }
  }
  return s;
}

std::vector<std::uint64_t> chain_counts(const Scwol& s) {
  std::vector<std::uint64_t> ending(s.vertex_count(), 1);
  std::vector<std::uint64_t> out;
  for (std::size_t k = 0;; ++k) {
    const std::uint64_t total = std::accumulate(ending.begin(), ending.end(), std::uint64_t{0});
    if (total == 0) break;
    if (k > s.vertex_count()) throw InvalidArgument("scwol: edges contain a cycle");
    out.push_back(total);
    std::vector<std::uint64_t> next(s.vertex_count(), 0);
    for (const auto& e : s.edges()) next[e.t] += ending[e.i];
    ending = std::move(next);
  }
  return out;
}

std::int64_t euler_characteristic(const Scwol& s) {
  std::int64_t chi = 0;
  const auto counts = chain_counts(s);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(counts[k]);
  }
  return chi;
}

bool is_connected(const Scwol& s) {
  if (s.vertex_count() == 0) return true;
  std::vector<std::uint32_t> parent(s.vertex_count());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = s.vertex_count();
  for (const auto& e : s.edges()) {
    const auto a = find(e.i);
    const auto b = find(e.t);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

std::string to_dot(const Scwol& s, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n";
  for (std::uint32_t v = 0; v < s.vertex_count(); ++v) {
    os << "  v" << v << " [label=\"" << s.name(v) << "\"];\n";
  }
  for (const auto& e : s.edges()) os << "  v" << e.i << " -> v" << e.t << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace kml
