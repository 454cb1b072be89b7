#include "kml/complex.hpp"
#include "kml/error.hpp"
#include "kml/rank_one.hpp"

#include "doctest.h"

using namespace kml;

namespace {

GCM all_infinite(int n) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, -2));
  for (int i = 0; i < n; ++i) rows[i][i] = 2;
  return GCM::validate(rows);
}

GCM polygon(int n) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, -2));
  for (int i = 0; i < n; ++i) {
    rows[i][i] = 2;
    rows[i][(i + 1) % n] = rows[(i + 1) % n][i] = 0;
  }
  return GCM::validate(rows);
}

// The p = 2 complex over the chamber scwol of an all-infinite Coxeter
// matrix: trivial chamber group, A_i = H_i at the mirrors, identity morphism.
struct StarFixture {
  std::shared_ptr<const FieldCtx> field;
  GCM gcm;
  std::shared_ptr<TargetResidueFamily> target;
  std::vector<GroupPtr> groups;

  StarFixture(std::uint32_t p, std::uint32_t h, int n) : field(std::make_shared<const FieldCtx>(FieldCtx::make(p, h))), gcm(all_infinite(n)) {
    const auto m = CoxeterMatrix::from_gcm(gcm);
    std::map<TypeMask, std::shared_ptr<const ResidueModel>> slots;
    for (TypeMask j : spherical_subsets(m).subsets) {
      auto model = std::make_shared<const LeviModel>(field, gcm, j);
      slots[j] = std::make_shared<const ResidueModel>(ResidueModel::product_of_lines(model));
    }
    target = make_target(m, slots);
    groups.assign(target->scwol.vertex_count(), nullptr);
    for (int i = 0; i < n; ++i) {
      const auto v = target->vertex_of(TypeMask{1} << i);
      groups[v] = std::make_shared<const FiniteActionGroup>(build_Ai(AiCase::p2, field, gcm, i));
    }
  }

  CogMorphism morphism() const {
    CogMorphism phi;
    phi.source = std::make_shared<const ComplexOfGroups>(ComplexOfGroups::by_inclusion(target->scwol, groups));
    phi.target = target;
    const auto& k = target->scwol;
    for (std::uint32_t v = 0; v < k.vertex_count(); ++v) {
      phi.vertex_map.push_back(v);
      phi.frame.push_back({target->slot_for_type.at(target->vertex_type(v)), 0});
    }
    for (std::uint32_t a = 0; a < k.edge_count(); ++a) {
      phi.edge_map.push_back(a);
      phi.edge_value.push_back(target->slots[phi.frame[k.edge(a).t].slot]->levi()->identity());
    }
    phi.set_inclusion_local_maps();
    return phi;
  }
};

}  // namespace

TEST_CASE("scwol axioms") {
  Scwol single;
  single.add_vertex(0);
  single.add_vertex(1);
  single.add_edge(0, 1);
  CHECK(validate(single).valid);

  Scwol loop;
  loop.add_vertex(std::nullopt);
  loop.add_edge(0, 0);
  CHECK_FALSE(validate(loop).valid);

  // Triangle with a composite whose terminal vertex is wrong.
  Scwol tri;
  for (int k = 0; k < 3; ++k) tri.add_vertex(std::nullopt);
  const auto b = tri.add_edge(0, 1);
  const auto a = tri.add_edge(1, 2);
  const auto bad = tri.add_edge(0, 1);
  tri.set_composite(a, b, bad);
  CHECK_FALSE(validate(tri).valid);

  Scwol open;
  for (int k = 0; k < 3; ++k) open.add_vertex(std::nullopt);
  open.add_edge(0, 1);
  open.add_edge(1, 2);
  CHECK_FALSE(validate(open).valid);  // composable pair without composite
}

TEST_CASE("chamber scwols") {
  const auto star = build_chamber_scwol(spherical_subsets(CoxeterMatrix::from_gcm(all_infinite(3))));
  CHECK(validate(star).valid);
  CHECK(star.vertex_count() == 4);
  CHECK(star.edge_count() == 3);
  CHECK(star.compositions().empty());

  const auto pentagon = build_chamber_scwol(spherical_subsets(CoxeterMatrix::from_gcm(polygon(5))));
  CHECK(validate(pentagon).valid);
  CHECK(pentagon.vertex_count() == 11);
  CHECK(pentagon.edge_count() == 20);
  CHECK(pentagon.compositions().size() == 10);
  CHECK(euler_characteristic(pentagon) == 1);
  CHECK(to_dot(pentagon).find("digraph") == 0);

  const auto one = build_chamber_scwol(spherical_subsets(CoxeterMatrix::from_gcm(GCM::validate({{2}}))));
  CHECK(one.vertex_count() == 2);
  CHECK(one.edge_count() == 1);
}

TEST_CASE("complex of groups validation") {
  StarFixture fx(2, 1, 2);
  const auto c = ComplexOfGroups::by_inclusion(fx.target->scwol, fx.groups);
  CHECK(validate(c).valid);
  auto broken = c;
  broken.psi[0] = {0};
  broken.psi[0].resize(1);
  CHECK(validate(broken).valid);  // trivial source: still fine
  // A non-injective map from A_i into itself along a fake edge.
  ComplexOfGroups twisted = ComplexOfGroups::trivial_over(c.base);
  CHECK(validate(twisted).valid);
}

TEST_CASE("covering at p = 2, two mirrors") {
  StarFixture fx(2, 1, 2);
  const auto cert = verify_covering(fx.morphism());
  CHECK(cert.pass);
  CHECK(cert.morphism_violations.empty());
  REQUIRE(cert.checks.size() == 2);
  for (const auto& c : cert.checks) {
    CHECK(c.domain == 3);
    CHECK(c.index == 3);
    CHECK(c.image == 3);
    CHECK(c.fibre == 1);
  }
  CHECK(covolume(*fx.morphism().source) == Rational{1, 1});
}

TEST_CASE("covering fails when a mirror group shrinks") {
  StarFixture fx(2, 1, 2);
  const auto v = fx.target->vertex_of(0b01);
  fx.groups[v] = std::make_shared<const FiniteActionGroup>(fx.groups[v]->subset({0}));
  const auto cert = verify_covering(fx.morphism());
  CHECK_FALSE(cert.pass);
  REQUIRE(cert.failed_checks == 1);
  const auto w = cert.witnesses();
  REQUIRE(w.size() == 1);
  CHECK(w[0].find("domain 1 < index 3") != std::string::npos);
}

TEST_CASE("covering fails when an edge is dropped") {
  StarFixture fx(2, 1, 2);
  const auto cert = verify_covering(without_source_edge(fx.morphism(), 0));
  CHECK_FALSE(cert.pass);
  CHECK_FALSE(cert.morphism_violations.empty());
  CHECK(cert.failed_checks == 1);
}

TEST_CASE("a transitive mirror group absorbs any edge value") {
  StarFixture fx(2, 1, 2);
  auto phi = fx.morphism();
  const auto& k = fx.target->scwol;
  const auto& model = *fx.target->slots[phi.frame[k.edge(0).t].slot]->levi();
  const int j = mask_members(fx.target->vertex_type(k.edge(0).t))[0];
  phi.edge_value[0] = model.from_factor(j, Mat2::make(*fx.field, 1, 1, 0, 1));
  const auto cert = verify_covering(phi);
  CHECK(cert.pass);
}

TEST_CASE("trivial complexes: covolume and free rank") {
  const auto k = build_chamber_scwol(spherical_subsets(CoxeterMatrix::from_gcm(all_infinite(3))));
  const auto c = ComplexOfGroups::trivial_over(k);
  CHECK(free_rank_trivial(c) == 0);
  CHECK(covolume(c) == Rational{1, 1});

  // Two chambers glued along three mirrors: a theta graph of rank 2.
  Scwol y;
  const auto c0 = y.add_vertex(0);
  const auto c1 = y.add_vertex(0);
  for (int i = 0; i < 3; ++i) {
    const auto m = y.add_vertex(TypeMask{1} << i);
    y.add_edge(c0, m);
    y.add_edge(c1, m);
  }
  const auto two = ComplexOfGroups::trivial_over(y);
  CHECK(covolume(two) == Rational{2, 1});
  CHECK(free_rank_trivial(two) == 2);
  CHECK(add(Rational{1, 6}, Rational{1, 3}) == Rational{1, 2});
}

TEST_CASE("graph product presentation") {
  StarFixture fx(2, 1, 3);
  const auto c = ComplexOfGroups::by_inclusion(fx.target->scwol, fx.groups);
  const auto p = presentation_over_cone(c);
  CHECK(p.to_string() == "generators: a1 a2 a3\nrelators: a1^3 a2^3 a3^3\n");
  StarFixture bad(2, 1, 2);
  bad.groups[0] = bad.groups[1];
  CHECK_THROWS_AS(presentation_over_cone(ComplexOfGroups::by_inclusion(bad.target->scwol, bad.groups)), Error);
}
