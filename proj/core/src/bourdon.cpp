#include <array>
#include <bit>
#include <map>
#include <set>

#include "construction_util.hpp"
#include "kml/constructions.hpp"
#include "kml/error.hpp"

namespace kml {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

TypeMask bit(int i) { return TypeMask{1} << i; }

std::string sizes(const std::set<std::size_t>& s) {
  std::string out;
  for (auto x : s) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out.empty() ? "-" : out;
}

}  // namespace

ConstructionResult build_bourdon_surface(const ConstructionRequest& req, bool verify, const MutationOptions& options) {
  Stats hyp = check_hypotheses(req);
  const GCM a = GCM::validate(req.cartan);
  const auto m = CoxeterMatrix::from_gcm(a);
  const int n = a.rank();
  auto field = std::make_shared<const FieldCtx>(FieldCtx::make(req.p, req.h));
  const std::uint32_t faces = detail::surface_face_count(req, n);
  const std::uint32_t genus = 1 + faces * static_cast<std::uint32_t>(n - 4) / 8;

  ConstructionResult out;
  out.stats = std::move(hyp);
  auto& st = out.stats;
  auto& fail = out.direct_failures;

  const auto search = find_tessellation(n, faces, req.budget);
  st.emplace_back("tessellation.nodes", std::to_string(search.nodes));
  st.emplace_back("tessellation.candidates", std::to_string(search.candidates));
  st.emplace_back("tessellation.homology_rejected", std::to_string(search.homology_rejected));
  if (!search.surface) {
    throw BudgetExceeded("no tessellation with a null-homologous geodesic orientation among " +
                         std::to_string(search.nodes) + " nodes");
  }
  const SurfaceComplex& s = *search.surface;
  out.surface = s;
  st.emplace_back("vertices", std::to_string(s.vertex_count));
  st.emplace_back("edges", std::to_string(s.edge_count()));
  st.emplace_back("euler_characteristic", std::to_string(s.euler_characteristic()));
  st.emplace_back("geodesics", std::to_string(s.geodesics.size()));
  std::string signs;
  std::vector<std::vector<std::int64_t>> cycles;
  for (const auto& h : s.geodesics) {
    signs += h.sign > 0 ? '+' : '-';
    cycles.push_back(s.chain(h));
  }
  st.emplace_back("geodesic_signs", signs);
  const bool bounds = is_nullhomologous(s, cycles);
  st.emplace_back("geodesic_sum_bounds", bounds ? "true" : "false");
  if (!bounds) fail.push_back("sum of geodesic classes is nonzero");
  for (const auto& p : validate(s).problems) fail.push_back("surface: " + p);
  if (4 * s.vertex_count != faces * n) fail.push_back("V != Fn/4");
  if (2 * s.edge_count() != faces * n) fail.push_back("E != Fn/2");
  if (4 * s.euler_characteristic() != static_cast<std::int64_t>(faces) * (4 - n)) fail.push_back("chi != F(1 - n/4)");
  if (s.euler_characteristic() != 2 - 2 * static_cast<std::int64_t>(genus)) fail.push_back("chi != 2 - 2g");

  // Models, residues and groups for the types that occur: empty, {i}, {i,i+1}.
  std::map<TypeMask, std::shared_ptr<const LeviModel>> model;
  std::map<TypeMask, std::shared_ptr<const ResidueModel>> residue;
  for (TypeMask j : spherical_subsets(m).subsets) {
    model[j] = std::make_shared<const LeviModel>(field, a, j);
    residue[j] = std::make_shared<const ResidueModel>(ResidueModel::product_of_lines(model[j]));
  }
  auto target = make_target(m, residue);
  std::map<TypeMask, GroupPtr> group;
  std::vector<Mat2> g;
  for (int i = 0; i < n; ++i) {
    const auto& mi = model.at(bit(i));
    group[bit(i)] = std::make_shared<const FiniteActionGroup>(
        FiniteActionGroup::generate(mi, ai_generators(AiCase::q1mod4, *mi, i), req.cap));
    g.push_back(detail::off_orbit_element(*field, *group[bit(i)], options.gi_inside_orbit));
    st.emplace_back("g" + std::to_string(i + 1), mi->to_string(mi->from_factor(i, g.back())));
  }
  for (int i = 0; i < n; ++i) {
    const int j = mod(i + 1, n);
    const TypeMask t = bit(i) | bit(j);
    auto gens = ai_generators(AiCase::q1mod4, *model.at(t), i);
    for (auto& x : ai_generators(AiCase::q1mod4, *model.at(t), j)) gens.push_back(x);
    group[t] = std::make_shared<const FiniteActionGroup>(FiniteActionGroup::generate(model.at(t), gens, req.cap));
  }
  for (const auto& [t, grp] : group) {
    st.emplace_back("order.A" + mask_label(t), std::to_string(grp->order()));
  }
  for (int i = 0; i < n; ++i) {
    const TypeMask t = bit(i) | bit(mod(i + 1, n));
    if (group[t]->order() != group[bit(i)]->order() * group[bit(mod(i + 1, n))]->order()) {
      fail.push_back("A" + mask_label(t) + " is not the direct product of its mirror groups");
    }
  }

  // Barycentric subdivision: faces (type empty), edges ({k}) and vertices
  // ({c-1,c} at corner c).
  Scwol y;
  std::vector<std::uint32_t> face_node, edge_node, vertex_node(s.vertex_count);
  std::vector<int> vertex_corner(s.vertex_count, -1);
  for (std::uint32_t f = 0; f < s.face_count(); ++f) {
    face_node.push_back(y.add_vertex(0, (f < s.m ? "black" + std::to_string(f) : "white" + std::to_string(f - s.m))));
  }
  for (std::uint32_t e = 0; e < s.edge_count(); ++e) {
    edge_node.push_back(y.add_vertex(bit(static_cast<int>(e % n)), "edge" + std::to_string(e)));
  }
  for (std::uint32_t f = 0; f < s.face_count(); ++f) {
    for (int c = 0; c < n; ++c) vertex_corner[s.vertex_at(f, c)] = c;
  }
  for (std::uint32_t v = 0; v < s.vertex_count; ++v) {
    const int c = vertex_corner[v];
    vertex_node[v] = y.add_vertex(bit(mod(c - 1, n)) | bit(c), "vertex" + std::to_string(v));
  }
  std::vector<std::vector<std::uint32_t>> face_edge(s.face_count()), face_vertex(s.face_count());
  std::vector<std::array<std::uint32_t, 2>> edge_end(s.edge_count());
  for (std::uint32_t f = 0; f < s.face_count(); ++f) {
    for (int k = 0; k < n; ++k) face_edge[f].push_back(y.add_edge(face_node[f], edge_node[s.edge_of(f, k)]));
  }
  for (std::uint32_t e = 0; e < s.edge_count(); ++e) {
    const std::uint32_t b = e / n;
    const int k = static_cast<int>(e % n);
    edge_end[e][0] = y.add_edge(edge_node[e], vertex_node[s.vertex_at(b, k)]);
    edge_end[e][1] = y.add_edge(edge_node[e], vertex_node[s.vertex_at(b, mod(k + 1, n))]);
  }
  for (std::uint32_t f = 0; f < s.face_count(); ++f) {
    for (int c = 0; c < n; ++c) {
      const auto fv = y.add_edge(face_node[f], vertex_node[s.vertex_at(f, c)]);
      face_vertex[f].push_back(fv);
      y.set_composite(edge_end[s.edge_of(f, c)][0], face_edge[f][c], fv);
      y.set_composite(edge_end[s.edge_of(f, mod(c - 1, n))][1], face_edge[f][mod(c - 1, n)], fv);
    }
  }
  for (const auto& p : validate(y).problems) fail.push_back("subdivision: " + p);

  std::vector<GroupPtr> local(y.vertex_count(), nullptr);
  for (std::uint32_t v = static_cast<std::uint32_t>(s.face_count()); v < y.vertex_count(); ++v) {
    local[v] = group.at(*y.type(v));
  }
  auto complex = std::make_shared<const ComplexOfGroups>(ComplexOfGroups::by_inclusion(y, local));
  out.complex = complex;
  for (const auto& p : validate(*complex).problems) fail.push_back("complex: " + p);

  // Edge values: 1 when the initial cell is left of the geodesic through the
  // terminal cell, g_i when right; composites multiply.
  CogMorphism phi;
  phi.source = complex;
  phi.target = target;
  for (std::uint32_t v = 0; v < y.vertex_count(); ++v) {
    const TypeMask t = *y.type(v);
    phi.vertex_map.push_back(target->vertex_of(t));
    phi.frame.push_back({target->slot_for_type.at(t), 0});
  }
  for (const auto& e : y.edges()) {
    phi.edge_map.push_back(*target->scwol.find_edge(target->vertex_of(*y.type(e.i)), target->vertex_of(*y.type(e.t))));
  }
  phi.edge_value.assign(y.edge_count(), LeviElement{});
  auto side_value = [&](TypeMask t, int i, bool left) {
    const auto& mt = *model.at(t);
    return left || options.ignore_sides ? mt.identity() : mt.from_factor(i, g[i]);
  };
  for (std::uint32_t f = 0; f < s.face_count(); ++f) {
    for (int k = 0; k < n; ++k) {
      const auto e = s.edge_of(f, k);
      phi.edge_value[face_edge[f][k]] = side_value(bit(k), k, s.left_of(e, f));
    }
  }
  for (std::uint32_t e = 0; e < s.edge_count(); ++e) {
    const std::uint32_t b = e / n;
    const int k = static_cast<int>(e % n);
    for (int end = 0; end < 2; ++end) {
      // The crossing geodesic runs along the neighbouring side of black b,
      // and the edge lies on the same side of it as b.
      const int other = end == 0 ? mod(k - 1, n) : mod(k + 1, n);
      const TypeMask t = bit(k) | bit(other);
      phi.edge_value[edge_end[e][end]] = side_value(t, other, s.left_of(b * n + other, b));
    }
  }
  std::size_t bad_corners = 0;
  for (std::uint32_t f = 0; f < s.face_count(); ++f) {
    for (int c = 0; c < n; ++c) {
      const int prev = mod(c - 1, n);
      const TypeMask t = bit(prev) | bit(c);
      const auto& mt = *model.at(t);
      const auto via_c = std::get<LeviElement>(phi.edge_value[edge_end[s.edge_of(f, c)][0]]);
      const auto inner = std::get<LeviElement>(phi.edge_value[face_edge[f][c]]);
      phi.edge_value[face_vertex[f][c]] = mt.multiply(via_c, mt.embed(*model.at(bit(c)), inner));
      const auto via_prev = std::get<LeviElement>(phi.edge_value[edge_end[s.edge_of(f, prev)][1]]);
      const auto inner_prev = std::get<LeviElement>(phi.edge_value[face_edge[f][prev]]);
      if (mt.multiply(via_prev, mt.embed(*model.at(bit(prev)), inner_prev)) !=
          std::get<LeviElement>(phi.edge_value[face_vertex[f][c]])) {
        ++bad_corners;
      }
    }
  }
  if (bad_corners) fail.push_back(std::to_string(bad_corners) + " corners with path-dependent values");
  // Around each vertex the four face values are 1, g_i, g_j and g_i g_j.
  std::size_t bad_vertices = 0;
  for (std::uint32_t v = 0; v < s.vertex_count; ++v) {
    const int c = vertex_corner[v];
    const int prev = mod(c - 1, n);
    const auto& mt = *model.at(bit(prev) | bit(c));
    const auto gp = mt.from_factor(prev, g[prev]);
    const auto gc = mt.from_factor(c, g[c]);
    const std::set<std::vector<std::uint32_t>> expected{mt.key(mt.identity()), mt.key(gp), mt.key(gc),
                                                        mt.key(mt.multiply(gp, gc))};
    std::set<std::vector<std::uint32_t>> seen;
    for (auto a : y.edges_into(vertex_node[v])) {
      if (*y.type(y.edge(a).i) == 0) seen.insert(mt.key(std::get<LeviElement>(phi.edge_value[a])));
    }
    if (seen != expected) ++bad_vertices;
  }
  if (bad_vertices) fail.push_back(std::to_string(bad_vertices) + " vertices without the values 1, g_i, g_j, g_ig_j");
  phi.set_inclusion_local_maps();
  out.morphism = phi;

  st.emplace_back("covolume", covolume(*complex).to_string());
  out.dot.emplace_back("surface", to_dot(s, "surface"));
  out.dot.emplace_back("subdivision", to_dot(y, "subdivision"));
  st.emplace_back("direct_checks", detail::covering_word(fail.empty()));
  if (verify) {
    out.certificate = verify_covering(phi);
    std::set<std::size_t> vertex_fibres, panel_fibres, edge_fibres, vertex_sizes;
    for (const auto& ck : out.certificate->checks) {
      const auto& b = target->scwol.edge(ck.target_edge);
      const int to = std::popcount(target->vertex_type(b.t));
      const int from = std::popcount(target->vertex_type(b.i));
      if (to == 2 && from == 0) {
        vertex_fibres.insert(ck.fibre);
        vertex_sizes.insert(ck.index);
      } else if (to == 2) {
        panel_fibres.insert(ck.fibre);
      } else {
        edge_fibres.insert(ck.fibre);
      }
    }
    st.emplace_back("fibres.vertex_over_chamber", sizes(vertex_fibres));
    st.emplace_back("fibres.vertex_over_panel", sizes(panel_fibres));
    st.emplace_back("fibres.panel_over_chamber", sizes(edge_fibres));
    st.emplace_back("vertex_check_size", sizes(vertex_sizes));
  }
  return out;
}

}  // namespace kml
