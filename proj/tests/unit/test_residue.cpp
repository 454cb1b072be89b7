#include "kml/error.hpp"
#include "kml/rank_one.hpp"
#include "kml/residue.hpp"

#include "doctest.h"

#include <random>
#include <set>

using namespace kml;

namespace {

std::shared_ptr<const FieldCtx> field(std::uint32_t p, std::uint32_t h = 1) {
  return std::make_shared<const FieldCtx>(FieldCtx::make(p, h));
}

GCM commuting(int n) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) rows[i][i] = 2;
  return GCM::validate(rows);
}

}  // namespace

TEST_CASE("product of lines blocks") {
  auto F = field(3);
  auto model = std::make_shared<const LeviModel>(F, commuting(3), 0b111);
  const auto r = ResidueModel::product_of_lines(model);
  CHECK(r.chamber_count() == 64);
  CHECK(r.block_count(0) == 64);
  CHECK(r.block_count(0b001) == 16);
  CHECK(r.block_count(0b011) == 4);
  CHECK(r.block_count(0b111) == 1);
  CHECK(r.blocks(0b011)[0] == 0);
  CHECK(r.block_contains(0b011, 0, 0b001, 0));
  CHECK_THROWS_AS(r.blocks(0b1000), InvalidArgument);
}

TEST_CASE("flag counts of the rank-two geometries") {
  for (auto [p, h] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
    auto F = field(p, h);
    const std::uint32_t q = F->q();
    const auto a2 = ResidueModel::a2_plane(*F, 0b11);
    // PG(2,q): q^2+q+1 points and lines, q+1 points per line.
    CHECK(a2.chamber_count() == (q * q + q + 1) * (q + 1));
    CHECK(a2.block_count(0b01) == q * q + q + 1);
    CHECK(a2.block_count(0b10) == q * q + q + 1);
    const auto b2 = ResidueModel::b2_quadrangle(*F, 0b11);
    // W(3,q): (q+1)(q^2+1) points and lines, q+1 on each.
    CHECK(b2.chamber_count() == (q + 1) * (q * q + 1) * (q + 1));
    CHECK(b2.block_count(0b01) == (q + 1) * (q * q + 1));
    CHECK(b2.block_count(0b10) == (q + 1) * (q * q + 1));
    for (const auto* r : {&a2, &b2}) {
      // Every panel has q+1 chambers.
      for (TypeMask t : {TypeMask{0b01}, TypeMask{0b10}}) {
        std::vector<std::uint32_t> size(r->block_count(t), 0);
        for (auto b : r->blocks(t)) ++size[b];
        for (auto s : size) CHECK(s == q + 1);
      }
    }
  }
}

TEST_CASE("counting-only residue refuses geometry") {
  const auto g2 = CoxeterMatrix::from_gcm(GCM::validate({{2, -3}, {-1, 2}}));
  const auto r = ResidueModel::counting_only(g2, 0b11, 2);
  CHECK(r.chamber_count() == 189);  // (1+q)(1+q+q^2+q^3+q^4+q^5) at q = 2
  CHECK_FALSE(r.geometric());
  CHECK_THROWS_AS(r.blocks(0b01), InvalidArgument);
}

TEST_CASE("star poset of the projective plane") {
  const auto r = ResidueModel::a2_plane(*field(2), 0b11);
  const auto sp = star_poset(r);
  CHECK(sp.nodes.size() == 36);
  CHECK(sp.count_by_type.at(0) == 21);
  CHECK(sp.count_by_type.at(0b01) == 7);
  CHECK(sp.count_by_type.at(0b10) == 7);
  CHECK(sp.count_by_type.at(0b11) == 1);
  // 21 chambers x 3 larger types + 7 + 7 panels below the top.
  CHECK(sp.relations.size() == 77);
}

TEST_CASE("transversals from cosets on random subgroup chains") {
  auto F = field(5);
  auto model = LeviModel::rank_one(F);
  std::vector<LeviElement> all;
  for (const auto& m : enumerate_sl2(*F)) all.push_back(model->from_factor(0, m));
  const auto h = FiniteActionGroup::generate(model, {all[7], all[31]});
  std::mt19937 rng(12345);
  int tested = 0;
  for (int trial = 0; trial < 40 && tested < 15; ++trial) {
    std::uniform_int_distribution<std::size_t> pick(0, h.order() - 1);
    const auto v = h.subgroup_generated({pick(rng), pick(rng)});
    const auto vin = embed_elements(v, h);
    const auto u = h.subgroup_generated({vin[std::uniform_int_distribution<std::size_t>(0, v.order() - 1)(rng)]});
    if (!is_subgroup(u, v)) continue;
    const auto t_hu = coset_transversal(h, u);
    const auto t_hv = coset_transversal(h, v);
    const auto bs = transversal_from_cosets(h, v, u, t_hu, t_hv);
    CHECK(bs.size() == t_hv.size());
    for (const auto& b : bs) CHECK(is_left_transversal(h, v, u, b));
    ++tested;
  }
  CHECK(tested > 5);
}
