#include <map>
#include <set>
#include <sstream>

#include "construction_util.hpp"
#include "kml/constructions.hpp"
#include "kml/error.hpp"
#include "union_find.hpp"

namespace kml {

namespace {

std::shared_ptr<const ResidueModel> residue_for(const CoxeterMatrix& m, const GCM& a,
                                                const std::shared_ptr<const FieldCtx>& field, TypeMask j) {
  const auto members = mask_members(j);
  bool clique = true;
  for (int x : members) {
    for (int y : members) {
      if (x != y && m(x, y) != 2) clique = false;
    }
  }
  if (clique) {
    return std::make_shared<const ResidueModel>(
        ResidueModel::product_of_lines(std::make_shared<const LeviModel>(field, a, j)));
  }
  if (members.size() == 2 && m(members[0], members[1]) == 3) {
    return std::make_shared<const ResidueModel>(ResidueModel::a2_plane(*field, j));
  }
  if (members.size() == 2 && m(members[0], members[1]) == 4) {
    return std::make_shared<const ResidueModel>(ResidueModel::b2_quadrangle(*field, j));
  }
  return nullptr;
}

// Free rank of the graph with a node per chamber and per copy, joined by
// membership: edges outside a spanning forest, -1 if disconnected.
std::int64_t spanning_tree_rank(const std::vector<std::int64_t>& radix) {
  const std::size_t n = radix.size();
  std::int64_t chambers = 1;
  for (auto r : radix) chambers *= r;
  std::vector<std::int64_t> copy_offset(n);
  std::int64_t nodes = chambers;
  for (std::size_t k = 0; k < n; ++k) {
    copy_offset[k] = nodes;
    nodes += chambers / radix[k];
  }
  detail::UnionFind uf(static_cast<std::size_t>(nodes));
  std::int64_t cycles = 0;
  for (std::int64_t t = 0; t < chambers; ++t) {
    // Digits with the last factor least significant; the copy index drops digit k.
    std::vector<std::int64_t> digit(n);
    std::int64_t rest = t;
    for (std::size_t k = n; k-- > 0;) {
      digit[k] = rest % radix[k];
      rest /= radix[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::int64_t copy = 0;
      for (std::size_t l = 0; l < n; ++l) {
        if (l != k) copy = copy * radix[l] + digit[l];
      }
      const auto a = uf.find(static_cast<std::uint32_t>(t));
      const auto b = uf.find(static_cast<std::uint32_t>(copy_offset[k] + copy));
      if (a == b) {
        ++cycles;
      } else {
        uf.unite(a, b);
      }
    }
  }
  for (std::int64_t v = 0; v < nodes; ++v) {
    if (uf.find(static_cast<std::uint32_t>(v)) != 0) return -1;
  }
  return cycles;
}

}  // namespace

ConstructionResult build_fp(const ConstructionRequest& req, bool verify) {
  Stats hyp = check_hypotheses(req);
  const GCM a = GCM::validate(req.cartan);
  const auto m = CoxeterMatrix::from_gcm(a);
  const auto factors = detail::fp_factors(req, m);
  auto field = std::make_shared<const FieldCtx>(FieldCtx::make(req.p, req.h));
  const std::int64_t q = field->q();
  const std::size_t n = factors.size();

  ConstructionResult out;
  out.stats = std::move(hyp);
  auto& st = out.stats;
  auto& fail = out.direct_failures;
  std::vector<std::shared_ptr<const ResidueModel>> residue;
  std::vector<std::int64_t> mk;
  bool geometric = true;
  for (TypeMask j : factors) {
    residue.push_back(residue_for(m, a, field, j));
    if (!residue.back()) geometric = false;
    mk.push_back(poincare_polynomial(m, j).eval(q));
  }
  std::int64_t big_m = 1;
  for (auto x : mk) {
    if (__builtin_mul_overflow(big_m, x, &big_m) || big_m > (std::int64_t{1} << 31)) {
      throw CapExceeded("number of chambers exceeds 2^31");
    }
  }
  st.emplace_back("mode", geometric ? "geometric" : "counting");
  for (std::size_t k = 0; k < n; ++k) st.emplace_back("m" + std::to_string(k + 1), std::to_string(mk[k]));
  st.emplace_back("M", std::to_string(big_m));
  std::int64_t sum_mk = 0;
  for (std::size_t k = 0; k < n; ++k) {
    st.emplace_back("M" + std::to_string(k + 1), std::to_string(big_m / mk[k]));
    sum_mk += big_m / mk[k];
  }
  const std::int64_t formula = 1 - sum_mk - big_m + static_cast<std::int64_t>(n) * big_m;
  const std::int64_t tree = spanning_tree_rank(mk);
  if (tree != formula) fail.push_back("spanning-tree rank " + std::to_string(tree) + " != closed form");
  out.free_rank = formula;

  if (!geometric) {
    st.emplace_back("free_rank.tree", std::to_string(tree));
    st.emplace_back("free_rank.formula", std::to_string(formula));
    st.emplace_back("covolume", std::to_string(big_m));
    st.emplace_back("direct_checks", detail::covering_word(fail.empty()));
    return out;
  }

  std::map<TypeMask, std::shared_ptr<const ResidueModel>> slots;
  for (std::size_t k = 0; k < n; ++k) {
    slots[factors[k]] = residue[k];
    if (static_cast<std::int64_t>(residue[k]->chamber_count()) != mk[k]) {
      fail.push_back("residue " + mask_label(factors[k]) + " has the wrong number of chambers");
    }
  }
  auto target = make_target(m, slots);

  Scwol y;
  const auto chambers = static_cast<std::uint32_t>(big_m);
  for (std::uint32_t t = 0; t < chambers; ++t) y.add_vertex(0, "chamber" + std::to_string(t));
  std::vector<Frame> frame(chambers);
  auto digits_of = [&](std::int64_t t) {
    std::vector<std::int64_t> d(n);
    for (std::size_t k = n; k-- > 0;) {
      d[k] = t % mk[k];
      t /= mk[k];
    }
    return d;
  };
  for (std::uint32_t t = 0; t < chambers; ++t) {
    frame[t] = {target->slot_for_type.at(factors[0]), static_cast<std::uint32_t>(digits_of(t)[0])};
  }
  std::vector<std::int64_t> membership(chambers * n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto star = star_poset(*residue[k]);
    const std::uint32_t slot = target->slot_for_type.at(factors[k]);
    const auto copies = big_m / mk[k];
    std::set<std::pair<std::size_t, std::size_t>> related(star.relations.begin(), star.relations.end());
    for (std::int64_t c = 0; c < copies; ++c) {
      // Copy c fixes the other digits to those of c in mixed radix.
      std::vector<std::int64_t> other(n, 0);
      std::int64_t rest = c;
      for (std::size_t l = n; l-- > 0;) {
        if (l == k) continue;
        other[l] = rest % mk[l];
        rest /= mk[l];
      }
      std::vector<std::uint32_t> node_vertex(star.nodes.size());
      for (std::size_t x = 0; x < star.nodes.size(); ++x) {
        const auto& node = star.nodes[x];
        if (node.type == 0) {
          auto d = other;
          d[k] = node.block;  // chamber blocks are numbered like the chambers
          std::int64_t t = 0;
          for (std::size_t l = 0; l < n; ++l) t = t * mk[l] + d[l];
          node_vertex[x] = static_cast<std::uint32_t>(t);
          ++membership[t * n + k];
        } else {
          node_vertex[x] = y.add_vertex(node.type, "Z" + std::to_string(k + 1) + "." + std::to_string(c) + ":" +
                                                       mask_label(node.type) + "#" + std::to_string(node.block));
          frame.push_back({slot, node.block});
        }
      }
      std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> edge_id;
      for (const auto& [lo, up] : star.relations) edge_id[{lo, up}] = y.add_edge(node_vertex[lo], node_vertex[up]);
      for (const auto& [lo, mid] : star.relations) {
        for (const auto& [mid2, up] : star.relations) {
          if (mid2 != mid || !related.count({lo, up})) continue;
          y.set_composite(edge_id[{mid, up}], edge_id[{lo, mid}], edge_id[{lo, up}]);
        }
      }
    }
  }
  for (std::uint32_t t = 0; t < chambers; ++t) {
    for (std::size_t k = 0; k < n; ++k) {
      if (membership[t * n + k] != 1) fail.push_back("chamber " + std::to_string(t) + " is not in exactly one copy");
    }
  }
  for (const auto& p : validate(y).problems) fail.push_back("glued scwol: " + p);

  auto complex = std::make_shared<const ComplexOfGroups>(ComplexOfGroups::trivial_over(y));
  out.complex = complex;
  CogMorphism phi;
  phi.source = complex;
  phi.target = target;
  phi.frame = frame;
  for (std::uint32_t v = 0; v < y.vertex_count(); ++v) phi.vertex_map.push_back(target->vertex_of(*y.type(v)));
  for (std::uint32_t e = 0; e < y.edge_count(); ++e) {
    const auto& ed = y.edge(e);
    phi.edge_map.push_back(*target->scwol.find_edge(phi.vertex_map[ed.i], phi.vertex_map[ed.t]));
    // The initial vertex's own block, read in the residue of the terminal one.
    const bool chamber = *y.type(ed.i) == 0;
    std::uint32_t block = frame[ed.i].block;
    if (chamber) {
      const auto slot = frame[ed.t].slot;
      std::size_t k = 0;
      while (target->slot_for_type.at(factors[k]) != slot) ++k;
      block = static_cast<std::uint32_t>(digits_of(ed.i)[k]);
    }
    phi.edge_value.push_back(FlagCoset{block});
  }
  phi.set_inclusion_local_maps();
  out.morphism = phi;

  const std::int64_t chain_rank = free_rank_trivial(*complex);
  st.emplace_back("free_rank.chains", std::to_string(chain_rank));
  st.emplace_back("free_rank.tree", std::to_string(tree));
  st.emplace_back("free_rank.formula", std::to_string(formula));
  if (chain_rank != formula) fail.push_back("chain rank " + std::to_string(chain_rank) + " != closed form");
  st.emplace_back("covolume", covolume(*complex).to_string());
  if (formula >= 0) {
    Presentation free;
    for (std::int64_t i = 1; i <= formula; ++i) free.generators.push_back("x" + std::to_string(i));
    out.presentation = free;
  }
  out.dot.emplace_back("glued_stars", to_dot(y, "glued_stars"));
  st.emplace_back("direct_checks", detail::covering_word(fail.empty()));
  if (verify) out.certificate = verify_covering(phi);
  return out;
}

ConstructionResult build(const ConstructionRequest& req, bool verify) {
  switch (req.which) {
    case ConstructionKind::ra_chamber_transitive: return build_ra_chamber_transitive(req, verify);
    case ConstructionKind::ra_two_orbit: return build_ra_two_orbit(req, verify);
    case ConstructionKind::bourdon_surface: return build_bourdon_surface(req, verify);
    case ConstructionKind::fp_free: return build_fp(req, verify);
  }
  throw InvalidArgument("unknown construction");
}

}  // namespace kml
