#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kml/coxeter.hpp"

namespace kml {

/// Small category without loops, stored as vertices, oriented edges and a
/// composition table on composable pairs (a, b) with i(a) = t(b).
class Scwol {
 public:
  struct Edge {
    std::uint32_t i = 0;  ///< initial vertex
    std::uint32_t t = 0;  ///< terminal vertex
  };

  std::uint32_t add_vertex(std::optional<TypeMask> type, std::string name = {});
  std::uint32_t add_edge(std::uint32_t from, std::uint32_t to);
  /// Declares ab for the pair (a, b); no checks, see validate.
  void set_composite(std::uint32_t a, std::uint32_t b, std::uint32_t ab);

  std::size_t vertex_count() const { return types_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(std::uint32_t a) const { return edges_.at(a); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<TypeMask>& type(std::uint32_t v) const { return types_.at(v); }
  const std::string& name(std::uint32_t v) const { return names_.at(v); }
  const std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>& compositions() const { return compose_; }

  std::optional<std::uint32_t> compose(std::uint32_t a, std::uint32_t b) const;
  std::vector<std::uint32_t> edges_into(std::uint32_t v) const;
  std::vector<std::uint32_t> edges_from(std::uint32_t v) const;
  /// First edge from -> to, if any.
  std::optional<std::uint32_t> find_edge(std::uint32_t from, std::uint32_t to) const;

  /// Copy with edge a removed (edge ids above a shift down by one) and every
  /// composition mentioning a dropped.
  Scwol without_edge(std::uint32_t a) const;

 private:
  std::vector<std::optional<TypeMask>> types_;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> compose_;
};

struct Diagnostics {
  bool valid = true;
  std::vector<std::string> problems;

  void fail(std::string msg) {
    valid = false;
    problems.push_back(std::move(msg));
  }
};

Diagnostics validate(const Scwol& s);

/// Cone over the barycentric subdivision of the nerve: a vertex per spherical
/// subset (vertex k is lattice.subsets[k]) and an edge J' -> J per strict
/// containment, composed by transitivity.
Scwol build_chamber_scwol(const SphericalLattice& lattice);

/// Number of k-chains of composable edges for k = 0, 1, ... (k = 0 counts vertices).
std::vector<std::uint64_t> chain_counts(const Scwol& s);
/// Euler characteristic of the geometric realisation.
std::int64_t euler_characteristic(const Scwol& s);
bool is_connected(const Scwol& s);

std::string to_dot(const Scwol& s, const std::string& graph_name = "scwol");

}  // namespace kml
