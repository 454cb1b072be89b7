#include "kml/constructions.hpp"
#include "kml/error.hpp"

#include "doctest.h"

#include <chrono>

using namespace kml;

namespace {

std::vector<std::vector<int>> cartan(int n, const std::vector<std::pair<int, int>>& commuting = {}) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, -2));
  for (int i = 0; i < n; ++i) rows[i][i] = 2;
  for (auto [i, j] : commuting) rows[i][j] = rows[j][i] = 0;
  return rows;
}

ConstructionRequest request(ConstructionKind k, std::vector<std::vector<int>> a, std::uint32_t p, std::uint32_t h = 1) {
  ConstructionRequest r;
  r.which = k;
  r.cartan = std::move(a);
  r.p = p;
  r.h = h;
  return r;
}

std::string stat(const ConstructionResult& r, const std::string& key) {
  for (const auto& [k, v] : r.stats) {
    if (k == key) return v;
  }
  return "<missing>";
}

}  // namespace

TEST_CASE("chamber-transitive lattice, three free mirrors at q = 2") {
  const auto r = build_ra_chamber_transitive(request(ConstructionKind::ra_chamber_transitive, cartan(3), 2));
  CHECK(r.direct_failures.empty());
  REQUIRE(r.certificate);
  CHECK(r.certificate->pass);
  CHECK(r.certificate->checks.size() == 3);
  CHECK(stat(r, "covolume") == "1");
  REQUIRE(r.presentation);
  CHECK(r.presentation->to_string() == "generators: a1 a2 a3\nrelators: a1^3 a2^3 a3^3\n");
}

TEST_CASE("chamber-transitive lattice with one commuting pair at q = 3") {
  const auto r = build_ra_chamber_transitive(request(ConstructionKind::ra_chamber_transitive, cartan(3, {{0, 1}}), 3));
  for (const auto& f : r.direct_failures) MESSAGE(f);
  CHECK(r.direct_failures.empty());
  REQUIRE(r.certificate);
  for (const auto& w : r.certificate->witnesses()) MESSAGE(w);
  CHECK(r.certificate->pass);
  CHECK(stat(r, "index.A{1,2}:A{1}") == "4");
  CHECK(stat(r, "order.A{}") == "8");
  CHECK(stat(r, "order.A{1,2}") == "128");
  for (const auto& c : r.certificate->checks) {
    CHECK(c.domain == c.index);
  }
}

TEST_CASE("chamber-transitive hypotheses") {
  CHECK_THROWS_AS(build_ra_chamber_transitive(request(ConstructionKind::ra_chamber_transitive, cartan(2, {{0, 1}}), 2)),
                  HypothesisError);
  CHECK_THROWS_AS(build_ra_chamber_transitive(request(ConstructionKind::ra_chamber_transitive, cartan(2), 5)),
                  HypothesisError);
  CHECK_THROWS_AS(
      build_ra_chamber_transitive(request(ConstructionKind::ra_chamber_transitive, {{2, -1}, {-1, 2}}, 2)),
      HypothesisError);
}

TEST_CASE("chamber-transitive mutations fail with witnesses") {
  const auto r = build_ra_chamber_transitive(request(ConstructionKind::ra_chamber_transitive, cartan(3, {{0, 1}}), 2));
  REQUIRE(r.morphism);
  const auto& phi = *r.morphism;
  const auto& k = phi.target->scwol;
  const auto v1 = phi.target->vertex_of(0b001);
  // Shrink A_1 to the image of A_empty.
  const auto shrunk = with_shrunken_group(phi, v1, {0});
  const auto c1 = verify_covering(shrunk);
  CHECK_FALSE(c1.pass);
  CHECK_FALSE(c1.witnesses().empty());
  for (std::uint32_t a = 0; a < k.edge_count(); ++a) {
    const auto c2 = verify_covering(without_source_edge(phi, a));
    CHECK_FALSE(c2.pass);
    CHECK_FALSE(c2.witnesses().empty());
  }
}

TEST_CASE("two-orbit lattice") {
  for (std::uint32_t q : {5u, 13u}) {
    const auto r = build_ra_two_orbit(request(ConstructionKind::ra_two_orbit, cartan(2), q));
    CHECK(r.direct_failures.empty());
    REQUIRE(r.certificate);
    CHECK(r.certificate->pass);
    CHECK(stat(r, "covolume") == "2");
    for (const auto& c : r.certificate->checks) {
      CHECK(c.fibre == 2);
      CHECK(c.domain == q + 1);
    }
  }
  MutationOptions bad;
  bad.gi_inside_orbit = true;
  const auto m = build_ra_two_orbit(request(ConstructionKind::ra_two_orbit, cartan(2), 5), true, bad);
  CHECK_FALSE(m.certificate->pass);
  CHECK(m.certificate->witnesses().front().find("collide") != std::string::npos);
  CHECK_THROWS_AS(build_ra_two_orbit(request(ConstructionKind::ra_two_orbit, cartan(2), 7)), HypothesisError);
}
