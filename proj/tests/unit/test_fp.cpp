#include "kml/constructions.hpp"
#include "kml/error.hpp"

#include "doctest.h"

#include <queue>

using namespace kml;

namespace {

ConstructionRequest fp_request(std::vector<std::vector<int>> a, std::uint32_t p) {
  ConstructionRequest r;
  r.which = ConstructionKind::fp_free;
  r.cartan = std::move(a);
  r.p = p;
  return r;
}

std::string stat(const ConstructionResult& r, const std::string& key) {
  for (const auto& [k, v] : r.stats) {
    if (k == key) return v;
  }
  return "<missing>";
}

// First Betti number of the graph on chambers and star centres (vertices
// without outgoing edges), joined when the scwol has an edge between them.
std::int64_t retract_betti(const Scwol& y) {
  auto kept = [&](std::uint32_t v) { return *y.type(v) == 0 || y.edges_from(v).empty(); };
  std::vector<std::vector<std::uint32_t>> adj(y.vertex_count());
  std::int64_t edges = 0, vertices = 0, components = 0;
  for (std::uint32_t a = 0; a < y.edge_count(); ++a) {
    const auto& e = y.edge(a);
    if (*y.type(e.i) == 0 && y.edges_from(e.t).empty()) {
      adj[e.i].push_back(e.t);
      adj[e.t].push_back(e.i);
      ++edges;
    }
  }
  std::vector<bool> seen(y.vertex_count(), false);
  for (std::uint32_t s = 0; s < y.vertex_count(); ++s) {
    if (!kept(s)) continue;
    ++vertices;
    if (seen[s]) continue;
    ++components;
    std::queue<std::uint32_t> todo;
    todo.push(s);
    seen[s] = true;
    while (!todo.empty()) {
      const auto v = todo.front();
      todo.pop();
      for (auto w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          todo.push(w);
        }
      }
    }
  }
  return edges - vertices + components;
}

const std::vector<std::vector<int>> kA1A1{{2, -2}, {-2, 2}};
const std::vector<std::vector<int>> kA2A1{{2, -1, -2}, {-1, 2, -2}, {-2, -2, 2}};
const std::vector<std::vector<int>> kB2A1{{2, -2, -2}, {-1, 2, -2}, {-2, -2, 2}};
const std::vector<std::vector<int>> kA1A1A1{{2, -2, -2}, {-2, 2, -2}, {-2, -2, 2}};

}  // namespace

TEST_CASE("free lattices certify and ranks agree") {
  struct Case {
    std::vector<std::vector<int>> a;
    std::uint32_t p;
    std::int64_t rank;
    std::int64_t chambers;
  };
  // Ranks from the closed form 1 - sum M_k - M + N M.
  const std::vector<Case> cases{{kA1A1, 2, 4, 9},    {kA1A1, 3, 9, 16},    {kA1A1, 5, 25, 36},
                                {kA2A1, 2, 40, 63},  {kB2A1, 2, 88, 135}, {kA1A1A1, 2, 28, 27}};
  for (const auto& c : cases) {
    const auto r = build_fp(fp_request(c.a, c.p));
    CAPTURE(stat(r, "hypothesis.components"));
    CHECK(stat(r, "mode") == "geometric");
    REQUIRE(r.certificate);
    CHECK(r.certificate->pass);
    CHECK(r.verified());
    CHECK(r.free_rank == c.rank);
    CHECK(stat(r, "free_rank.chains") == std::to_string(c.rank));
    CHECK(stat(r, "free_rank.tree") == std::to_string(c.rank));
    CHECK(stat(r, "M") == std::to_string(c.chambers));
    CHECK(retract_betti(r.complex->base) == c.rank);
    REQUIRE(r.presentation);
    CHECK(r.presentation->generators.size() == static_cast<std::size_t>(c.rank));
  }
}

TEST_CASE("plane times line counts") {
  const auto r = build_fp(fp_request(kA2A1, 2));
  CHECK(stat(r, "m1") == "21");
  CHECK(stat(r, "m2") == "3");
  CHECK(stat(r, "M1") == "3");
  CHECK(stat(r, "M2") == "21");
  CHECK(stat(r, "covolume") == "63");
}

TEST_CASE("hexagon factor falls back to counting") {
  const auto r = build_fp(fp_request({{2, -3, -2}, {-1, 2, -2}, {-2, -2, 2}}, 2));
  CHECK(stat(r, "mode") == "counting");
  CHECK(stat(r, "m1") == "189");
  CHECK(stat(r, "free_rank.formula") == "376");
  CHECK_FALSE(r.certificate);
}

TEST_CASE("free lattice mutations fail") {
  const auto r = build_fp(fp_request(kA1A1, 2));
  auto moved = *r.morphism;
  // Send a chamber edge to the wrong chamber block.
  for (std::uint32_t a = 0; a < moved.edge_value.size(); ++a) {
    auto& f = std::get<FlagCoset>(moved.edge_value[a]);
    if (*r.complex->base.type(r.complex->base.edge(a).i) == 0) {
      f.block = (f.block + 1) % 3;
      break;
    }
  }
  const auto bad = verify_covering(moved);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.witnesses().empty());
  const auto dropped = verify_covering(without_source_edge(*r.morphism, 0));
  CHECK_FALSE(dropped.pass);
}

TEST_CASE("free product hypotheses") {
  CHECK_THROWS_AS(build_fp(fp_request({{2, -1}, {-1, 2}}, 2)), HypothesisError);
  CHECK_THROWS_AS(build_fp(fp_request({{2, -1, -2}, {-1, 2, -1}, {-2, -1, 2}}, 2)), HypothesisError);
  CHECK_THROWS_AS(build_fp(fp_request({{2, -4}, {-1, 2}}, 2)), HypothesisError);
  auto reordered = fp_request(kA2A1, 2);
  reordered.partition = {TypeMask{4}, TypeMask{3}};
  const auto r = build_fp(reordered);
  CHECK(stat(r, "m1") == "3");
  CHECK(r.verified());
  auto split = fp_request(kA2A1, 2);
  split.partition = {TypeMask{1}, TypeMask{2}, TypeMask{4}};
  CHECK_THROWS_AS(build_fp(split), HypothesisError);
}
