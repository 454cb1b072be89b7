#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "kml/constructions.hpp"
#include "kml/error.hpp"
#include "construction_util.hpp"

namespace kml {

std::string to_string(ConstructionKind k) {
  switch (k) {
    case ConstructionKind::ra_chamber_transitive: return "ra_chamber_transitive";
    case ConstructionKind::ra_two_orbit: return "ra_two_orbit";
    case ConstructionKind::bourdon_surface: return "bourdon_surface";
    case ConstructionKind::fp_free: return "fp_free";
  }
  return "?";
}

std::optional<ConstructionKind> construction_from_string(const std::string& name) {
  for (auto k : {ConstructionKind::ra_chamber_transitive, ConstructionKind::ra_two_orbit,
                 ConstructionKind::bourdon_surface, ConstructionKind::fp_free}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

using detail::covering_word;

namespace {

std::set<ElementKey> keys_in(const FiniteActionGroup& g, const std::vector<std::size_t>& idx) {
  std::set<ElementKey> out;
  for (auto i : idx) out.insert(g.key(i));
  return out;
}

std::vector<std::size_t> all_elements(const FiniteActionGroup& g) {
  std::vector<std::size_t> out(g.order());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

}  // namespace

ConstructionResult build_ra_chamber_transitive(const ConstructionRequest& req, bool verify) {
  Stats hyp = check_hypotheses(req);
  const GCM a = GCM::validate(req.cartan);
  const auto m = CoxeterMatrix::from_gcm(a);
  auto field = std::make_shared<const FieldCtx>(FieldCtx::make(req.p, req.h));
  const AiCase ai = ai_case_for(*field);
  const int n = a.rank();
  const std::uint32_t q = field->q();

  const auto lattice = spherical_subsets(m);
  std::map<TypeMask, std::shared_ptr<const LeviModel>> model;
  std::map<TypeMask, std::shared_ptr<const ResidueModel>> residue;
  for (TypeMask j : lattice.subsets) {
    model[j] = std::make_shared<const LeviModel>(field, a, j);
    residue[j] = std::make_shared<const ResidueModel>(ResidueModel::product_of_lines(model[j]));
  }
  auto target = make_target(m, residue);

  std::map<TypeMask, GroupPtr> group;
  for (TypeMask j : lattice.subsets) {
    if (j == 0) continue;
    std::vector<LeviElement> gens;
    for (int i : mask_members(j)) {
      for (auto& g : ai_generators(ai, *model[j], i)) gens.push_back(std::move(g));
    }
    group[j] = std::make_shared<const FiniteActionGroup>(FiniteActionGroup::generate(model[j], gens, req.cap));
  }
  // A_empty: the part of every A_i fixing the base chamber, read in the torus.
  {
    std::map<ElementKey, LeviElement> common;
    bool first = true;
    for (int i = 0; i < n; ++i) {
      const TypeMask ti = TypeMask{1} << i;
      const auto stab = group.at(ti)->point_stabilizer(0);
      std::map<ElementKey, LeviElement> here;
      for (std::size_t x = 0; x < stab.order(); ++x) {
        auto r = model[0]->restrict_from(*model[ti], stab.label(x));
        if (!r) throw InternalError("A_" + std::to_string(i + 1) + " meets the Borel outside the torus");
        here.emplace(model[0]->key(*r), *r);
      }
      if (first) {
        common = std::move(here);
        first = false;
      } else {
        std::erase_if(common, [&](const auto& kv) { return !here.count(kv.first); });
      }
    }
    std::vector<LeviElement> elems;
    for (auto& [k, e] : common) elems.push_back(e);
    group[0] = std::make_shared<const FiniteActionGroup>(FiniteActionGroup::generate(model[0], elems, req.cap));
  }

  ConstructionResult out;
  out.stats = std::move(hyp);
  auto& st = out.stats;
  st.emplace_back("spherical_subsets", std::to_string(lattice.subsets.size()));
  for (TypeMask j : lattice.subsets) st.emplace_back("order.A" + mask_label(j), std::to_string(group[j]->order()));

  // Condition (1): |A_J : A_{J - j}| = q + 1, and condition (2): A_J meets
  // the stabiliser of the base J'-block exactly in A_J'.
  auto& fail = out.direct_failures;
  for (const auto& [lo, hi] : lattice.containments) {
    const TypeMask jl = lattice.subsets[lo];
    const TypeMask jh = lattice.subsets[hi];
    const auto& big = *group[jh];
    const auto& small = *group[jl];
    std::vector<std::size_t> emb;
    try {
      emb = embed_elements(small, big);
    } catch (const InvalidArgument&) {
      fail.push_back("A" + mask_label(jl) + " is not contained in A" + mask_label(jh));
      continue;
    }
    if (mask_size(jh) == mask_size(jl) + 1) {
      const std::size_t idx = big.order() / small.order();
      st.emplace_back("index.A" + mask_label(jh) + ":A" + mask_label(jl), std::to_string(idx));
      if (big.order() % small.order() != 0 || idx != q + 1) {
        fail.push_back("|A" + mask_label(jh) + " : A" + mask_label(jl) + "| = " + std::to_string(idx) + " != " +
                       std::to_string(q + 1));
      }
    }
    const auto stab = big.block_stabilizer(residue[jh]->blocks(jl), 0);
    if (keys_in(stab, all_elements(stab)) != keys_in(big, emb)) {
      fail.push_back("A" + mask_label(jh) + " meets P" + mask_label(jl) + " in " + std::to_string(stab.order()) +
                     " elements, A" + mask_label(jl) + " has " + std::to_string(small.order()));
    }
  }
  // Case-specific structure of the local groups.
  for (TypeMask j : lattice.subsets) {
    std::size_t expected = 1;
    for (int k = 0; k < mask_size(j); ++k) expected *= q + 1;
    if (ai == AiCase::q3mod4) expected <<= n;
    if (group[j]->order() != expected) {
      fail.push_back("|A" + mask_label(j) + "| = " + std::to_string(group[j]->order()) + ", expected " +
                     std::to_string(expected));
    }
  }
  if (ai == AiCase::q3mod4) {
    std::vector<LeviElement> t0;
    for (int k = 0; k < n; ++k) {
      TorusElement t = torus_identity(n);
      t.t[k] = sylow2_generator(*field);
      t0.push_back(model[0]->from_torus(t));
    }
    const auto syl = FiniteActionGroup::generate(model[0], t0);
    if (!is_subgroup(syl, *group[0]) || syl.order() != group[0]->order()) fail.push_back("A{} is not T_0");
  }

  std::vector<GroupPtr> local;
  for (TypeMask j : lattice.subsets) local.push_back(j == 0 && group[0]->order() == 1 ? nullptr : group[j]);
  auto complex = std::make_shared<const ComplexOfGroups>(ComplexOfGroups::by_inclusion(target->scwol, local));
  out.complex = complex;
  const auto diag = validate(*complex);
  for (const auto& p : diag.problems) fail.push_back("complex: " + p);

  CogMorphism phi;
  phi.source = complex;
  phi.target = target;
  const Scwol& k = target->scwol;
  for (std::uint32_t v = 0; v < k.vertex_count(); ++v) {
    phi.vertex_map.push_back(v);
    phi.frame.push_back({target->slot_for_type.at(target->vertex_type(v)), 0});
  }
  for (std::uint32_t e = 0; e < k.edge_count(); ++e) {
    phi.edge_map.push_back(e);
    phi.edge_value.push_back(model[target->vertex_type(k.edge(e).t)]->identity());
  }
  phi.set_inclusion_local_maps();
  out.morphism = phi;

  st.emplace_back("covolume", covolume(*complex).to_string());
  if (group[0]->order() == 1) {
    out.presentation = presentation_over_cone(*complex);
  }
  out.dot.emplace_back("chamber_scwol", to_dot(k, "chamber"));
  st.emplace_back("direct_checks", covering_word(fail.empty()));
  if (verify) {
    out.certificate = verify_covering(phi);
    if (out.certificate->pass != fail.empty()) fail.push_back("direct checks and covering verifier disagree");
  }
  return out;
}

ConstructionResult build_ra_two_orbit(const ConstructionRequest& req, bool verify, const MutationOptions& options) {
  Stats hyp = check_hypotheses(req);
  const GCM a = GCM::validate(req.cartan);
  const auto m = CoxeterMatrix::from_gcm(a);
  const int n = a.rank();
  auto field = std::make_shared<const FieldCtx>(FieldCtx::make(req.p, req.h));
  const std::uint32_t q = field->q();

  const auto lattice = spherical_subsets(m);
  std::map<TypeMask, std::shared_ptr<const LeviModel>> model;
  std::map<TypeMask, std::shared_ptr<const ResidueModel>> residue;
  for (TypeMask j : lattice.subsets) {
    model[j] = std::make_shared<const LeviModel>(field, a, j);
    residue[j] = std::make_shared<const ResidueModel>(ResidueModel::product_of_lines(model[j]));
  }
  auto target = make_target(m, residue);

  // Two chambers, n mirror vertices, an edge from each chamber to each mirror.
  Scwol y;
  const auto c1 = y.add_vertex(0, "chamber1");
  const auto c2 = y.add_vertex(0, "chamber2");
  std::vector<std::uint32_t> mirror;
  for (int i = 0; i < n; ++i) mirror.push_back(y.add_vertex(TypeMask{1} << i, "mirror" + std::to_string(i + 1)));
  std::vector<GroupPtr> local(y.vertex_count(), nullptr);
  std::vector<LeviElement> gi;
  ConstructionResult out;
  out.stats = std::move(hyp);
  auto& st = out.stats;
  auto& fail = out.direct_failures;
  for (int i = 0; i < n; ++i) {
    const TypeMask ti = TypeMask{1} << i;
    local[mirror[i]] = std::make_shared<const FiniteActionGroup>(
        FiniteActionGroup::generate(model[ti], ai_generators(AiCase::q1mod4, *model[ti], i), req.cap));
    gi.push_back(model[ti]->from_factor(i, detail::off_orbit_element(*field, *local[mirror[i]], options.gi_inside_orbit)));
    st.emplace_back("g" + std::to_string(i + 1), model[ti]->to_string(gi.back()));
    st.emplace_back("order.A" + mask_label(ti), std::to_string(local[mirror[i]]->order()));
    st.emplace_back("orbits.A" + mask_label(ti), std::to_string(local[mirror[i]]->orbits().size()));
    if (local[mirror[i]]->order() != (q + 1) / 2) fail.push_back("|A" + mask_label(ti) + "| != (q+1)/2");
    if (local[mirror[i]]->point_stabilizer(0).order() != 1) fail.push_back("A" + mask_label(ti) + " meets the Borel");
  }
  std::vector<std::uint32_t> first_edge, second_edge;
  for (int i = 0; i < n; ++i) {
    first_edge.push_back(y.add_edge(c1, mirror[i]));
    second_edge.push_back(y.add_edge(c2, mirror[i]));
  }
  auto complex = std::make_shared<const ComplexOfGroups>(ComplexOfGroups::by_inclusion(y, local));
  out.complex = complex;
  for (const auto& p : validate(*complex).problems) fail.push_back("complex: " + p);

  CogMorphism phi;
  phi.source = complex;
  phi.target = target;
  for (std::uint32_t v = 0; v < y.vertex_count(); ++v) {
    const TypeMask t = *y.type(v);
    phi.vertex_map.push_back(target->vertex_of(t));
    phi.frame.push_back({target->slot_for_type.at(t), 0});
  }
  phi.edge_map.resize(y.edge_count());
  phi.edge_value.resize(y.edge_count(), LeviElement{});
  for (int i = 0; i < n; ++i) {
    const TypeMask ti = TypeMask{1} << i;
    const auto b = *target->scwol.find_edge(target->vertex_of(0), target->vertex_of(ti));
    phi.edge_map[first_edge[i]] = b;
    phi.edge_map[second_edge[i]] = b;
    phi.edge_value[first_edge[i]] = model[ti]->identity();
    phi.edge_value[second_edge[i]] = gi[i];
  }
  phi.set_inclusion_local_maps();
  out.morphism = phi;
  st.emplace_back("covolume", covolume(*complex).to_string());
  out.dot.emplace_back("glued_stars", to_dot(y, "glued_stars"));
  if (verify) out.certificate = verify_covering(phi);
  return out;
}

}  // namespace kml
