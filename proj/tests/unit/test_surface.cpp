#include "kml/constructions.hpp"
#include "kml/error.hpp"
#include "kml/homology.hpp"
#include "kml/surface.hpp"

#include "doctest.h"

#include <random>

using namespace kml;

namespace {

constexpr std::int64_t kPrime = 1'000'003;

// Rank over F_p for a large prime, an independent stand-in for the rational
// rank of small 0/+-1 matrices.
std::size_t rank_mod_p(IntMatrix a) {
  auto norm = [](std::int64_t x) { return ((x % kPrime) + kPrime) % kPrime; };
  auto inv = [&](std::int64_t x) {
    std::int64_t r = 1, b = x, e = kPrime - 2;
    while (e) {
      if (e & 1) r = r * b % kPrime;
      b = b * b % kPrime;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (auto& row : a) {
    for (auto& x : row) x = norm(x);
  }
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const auto iv = inv(a[rank][c]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const auto f = a[r][c] * iv % kPrime;
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = norm(a[r][k] - f * a[rank][k]);
    }
    ++rank;
  }
  return rank;
}

bool bounds_by_rank(const SurfaceComplex& s, const std::vector<std::int64_t>& z) {
  auto d = s.boundary2();
  const auto r0 = rank_mod_p(d);
  for (std::size_t e = 0; e < d.size(); ++e) d[e].push_back(z[e]);
  return rank_mod_p(d) == r0;
}

std::vector<std::vector<int>> cycle_cartan(int n) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, -2));
  for (int i = 0; i < n; ++i) {
    rows[i][i] = 2;
    rows[i][(i + 1) % n] = rows[(i + 1) % n][i] = 0;
  }
  return rows;
}

ConstructionRequest surface_request(int n, std::uint32_t faces, std::uint32_t p) {
  ConstructionRequest r;
  r.which = ConstructionKind::bourdon_surface;
  r.cartan = cycle_cartan(n);
  r.p = p;
  r.faces = faces;
  return r;
}

std::string stat(const ConstructionResult& r, const std::string& key) {
  for (const auto& [k, v] : r.stats) {
    if (k == key) return v;
  }
  return "<missing>";
}

}  // namespace

TEST_CASE("integer echelon solve") {
  CHECK_FALSE(ColumnEchelon(IntMatrix{{2}}).solve({1}));
  CHECK(ColumnEchelon(IntMatrix{{2}}).solve({4}) == std::vector<std::int64_t>{2});
  const auto x = ColumnEchelon(IntMatrix{{2, 3}}).solve({1});
  REQUIRE(x);
  CHECK(2 * (*x)[0] + 3 * (*x)[1] == 1);
  CHECK_FALSE(ColumnEchelon(IntMatrix{{2, 4}, {0, 2}}).unit_pivots());

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix a(4, std::vector<std::int64_t>(3));
    std::vector<std::int64_t> x0(3), b(4, 0);
    for (auto& row : a) {
      for (auto& v : row) v = entry(rng);
    }
    for (auto& v : x0) v = entry(rng);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 3; ++c) b[r] += a[r][c] * x0[c];
    }
    const auto y = ColumnEchelon(a).solve(b);
    REQUIRE(y);
    for (int r = 0; r < 4; ++r) {
      std::int64_t s = 0;
      for (int c = 0; c < 3; ++c) s += a[r][c] * (*y)[c];
      CHECK(s == b[r]);
    }
  }
}

TEST_CASE("pentagon tessellation of the genus two surface") {
  const auto search = find_tessellation(5, 8, 1'000'000);
  REQUIRE(search.surface);
  const auto& s = *search.surface;
  CHECK(validate(s).valid);
  CHECK(s.vertex_count == 10);
  CHECK(s.edge_count() == 20);
  CHECK(s.face_count() == 8);
  CHECK(s.euler_characteristic() == -2);
  for (const auto& cyc : s.rotation_system()) CHECK(cyc.size() == 4);
  // Each edge has one face on each side of its geodesic.
  for (std::uint32_t e = 0; e < s.edge_count(); ++e) {
    const std::uint32_t b = e / 5;
    CHECK(s.left_of(e, b) != s.left_of(e, s.white_of(b, static_cast<int>(e % 5))));
  }
  std::vector<std::vector<std::int64_t>> all;
  for (const auto& h : s.geodesics) all.push_back(s.chain(h));
  CHECK(is_nullhomologous(s, all));
}

TEST_CASE("null-homology agrees with a rank oracle") {
  const auto s = *find_tessellation(5, 8, 1'000'000).surface;
  const auto d2 = s.boundary2();
  std::vector<std::int64_t> face(s.edge_count());
  for (std::uint32_t e = 0; e < s.edge_count(); ++e) face[e] = d2[e][0];
  CHECK(is_nullhomologous(s, {face}));

  bool some_nonseparating = false;
  for (const auto& h : s.geodesics) {
    const auto c = s.chain(h);
    const bool mine = is_nullhomologous(s, {c});
    CHECK(mine == bounds_by_rank(s, c));
    if (!mine) some_nonseparating = true;
    auto reverse = c;
    for (auto& x : reverse) x = -x;
    CHECK(is_nullhomologous(s, {c, reverse}));
  }
  CHECK(some_nonseparating);

  const std::size_t count = s.geodesics.size();
  std::size_t bounding = 0;
  for (std::uint32_t mask = 0; mask < (1u << count); ++mask) {
    std::vector<std::int64_t> z(s.edge_count(), 0);
    for (std::size_t k = 0; k < count; ++k) {
      const auto c = s.chain(s.geodesics[k]);
      const int sgn = (mask >> k) & 1 ? -1 : 1;
      for (std::size_t e = 0; e < z.size(); ++e) z[e] += sgn * c[e];
    }
    const bool mine = is_nullhomologous(s, {z});
    CHECK(mine == bounds_by_rank(s, z));
    bounding += mine;
  }
  CHECK(bounding > 0);

  std::vector<std::int64_t> open(s.edge_count(), 0);
  open[0] = 1;
  CHECK_THROWS_AS(is_nullhomologous(s, {open}), InvalidArgument);
}

TEST_CASE("Euler counts for other face numbers") {
  for (auto [n, faces] : {std::pair{6, 8u}, std::pair{5, 16u}}) {
    const auto s = *find_tessellation(n, faces, 1'000'000).surface;
    CHECK(validate(s).valid);
    CHECK(4 * s.vertex_count == faces * n);
    CHECK(2 * s.edge_count() == faces * n);
    CHECK(4 * s.euler_characteristic() == static_cast<std::int64_t>(faces) * (4 - n));
  }
  CHECK_THROWS_AS(find_tessellation(5, 8, 2), BudgetExceeded);
}

TEST_CASE("surface lattice at q = 5 covers") {
  const auto r = build_bourdon_surface(surface_request(5, 8, 5));
  CHECK(r.direct_failures.empty());
  REQUIRE(r.certificate);
  CHECK(r.certificate->pass);
  CHECK(r.verified());
  CHECK(stat(r, "hypothesis.genus") == "2");
  CHECK(stat(r, "vertices") == "10");
  CHECK(stat(r, "edges") == "20");
  CHECK(stat(r, "euler_characteristic") == "-2");
  CHECK(stat(r, "geodesic_sum_bounds") == "true");
  CHECK(stat(r, "fibres.vertex_over_chamber") == "4");
  CHECK(stat(r, "fibres.vertex_over_panel") == "2");
  CHECK(stat(r, "fibres.panel_over_chamber") == "2");
  CHECK(stat(r, "vertex_check_size") == "36");
  CHECK(stat(r, "covolume") == "8");
  CHECK(stat(r, "order.A{1,2}") == "9");
}

TEST_CASE("surface lattice for larger parameters") {
  auto req = surface_request(6, 8, 5);
  const auto r = build_bourdon_surface(req);
  CHECK(r.verified());
  CHECK(stat(r, "hypothesis.genus") == "3");
  auto by_genus = surface_request(5, 8, 13);
  by_genus.faces.reset();
  by_genus.genus = 2;
  const auto r13 = build_bourdon_surface(by_genus);
  CHECK(r13.verified());
  CHECK(stat(r13, "hypothesis.faces") == "8");
  CHECK(stat(r13, "vertex_check_size") == "196");
}

TEST_CASE("surface lattice mutation and hypotheses") {
  MutationOptions same_side;
  same_side.ignore_sides = true;
  const auto bad = build_bourdon_surface(surface_request(5, 8, 5), true, same_side);
  CHECK_FALSE(bad.certificate->pass);
  REQUIRE_FALSE(bad.certificate->witnesses().empty());
  CHECK(bad.certificate->witnesses().front().find("collide") != std::string::npos);

  CHECK_THROWS_AS(build_bourdon_surface(surface_request(5, 12, 5)), HypothesisError);
  CHECK_THROWS_AS(build_bourdon_surface(surface_request(4, 8, 5)), HypothesisError);
  CHECK_THROWS_AS(build_bourdon_surface(surface_request(5, 8, 3)), HypothesisError);
  auto chordal = surface_request(6, 8, 5);
  chordal.cartan[0][3] = chordal.cartan[3][0] = 0;
  CHECK_THROWS_AS(build_bourdon_surface(chordal), HypothesisError);
  auto odd_genus = surface_request(6, 8, 5);
  odd_genus.faces.reset();
  odd_genus.genus = 2;
  CHECK_THROWS_AS(build_bourdon_surface(odd_genus), HypothesisError);
  auto tight = surface_request(5, 8, 5);
  tight.budget = 2;
  CHECK_THROWS_AS(build_bourdon_surface(tight), BudgetExceeded);
}

TEST_CASE("induced cycles in the nerve") {
  const auto pentagon = surface_subgroup_hypothesis(GCM::validate(cycle_cartan(5)), 3);
  CHECK(pentagon.right_angled);
  CHECK(pentagon.cycle == std::vector<int>{0, 1, 2, 3, 4});
  REQUIRE(pentagon.presentation);
  CHECK(pentagon.presentation->to_string() ==
        "generators: a1 a2 a3 a4 a5\nrelators: a1^3 a2^3 a3^3 a4^3 a5^3 a1*a2*a1^-1*a2^-1 a2*a3*a2^-1*a3^-1 "
        "a3*a4*a3^-1*a4^-1 a4*a5*a4^-1*a5^-1 a5*a1*a5^-1*a1^-1\n");

  std::vector<std::vector<int>> free(5, std::vector<int>(5, -2));
  for (int i = 0; i < 5; ++i) free[i][i] = 2;
  CHECK(surface_subgroup_hypothesis(GCM::validate(free)).cycle.empty());
  CHECK(surface_subgroup_hypothesis(GCM::validate(cycle_cartan(4))).cycle.empty());

  auto chorded = cycle_cartan(6);
  chorded[0][3] = chorded[3][0] = 0;
  CHECK(surface_subgroup_hypothesis(GCM::validate(chorded)).cycle.empty());
  auto seven = cycle_cartan(7);
  seven[0][3] = seven[3][0] = 0;
  CHECK(surface_subgroup_hypothesis(GCM::validate(seven)).cycle == std::vector<int>{0, 3, 4, 5, 6});

  CHECK_FALSE(surface_subgroup_hypothesis(GCM::validate({{2, -1}, {-1, 2}})).right_angled);
}
