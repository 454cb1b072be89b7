#include "kml/residue.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "kml/error.hpp"
#include "union_find.hpp"

namespace kml {

std::string to_string(ResidueKind k) {
  switch (k) {
    case ResidueKind::product_of_lines: return "product_of_lines";
    case ResidueKind::a2_plane: return "A2_plane";
    case ResidueKind::b2_quadrangle: return "B2_quadrangle";
    case ResidueKind::counting_only: return "counting_only";
  }
  return "?";
}

namespace {

using detail::UnionFind;

// Projective points of F_q^d as normalised vectors (first nonzero entry 1),
// ordered by their base-q code with coordinate 0 most significant.
struct ProjectiveSpace {
  const FieldCtx* F;
  int dim;
  std::vector<std::vector<Elem>> points;
  std::map<std::vector<Elem>, std::uint32_t> index;

  ProjectiveSpace(const FieldCtx& field, int d) : F(&field), dim(d) {
    const std::uint32_t q = field.q();
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    for (std::uint64_t code = 1; code < total; ++code) {
      std::vector<Elem> v(d);
      std::uint64_t rest = code;
      for (int i = d; i-- > 0;) {
        v[i] = static_cast<Elem>(rest % q);
        rest /= q;
      }
      auto first = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
      if (*first != 1) continue;
      index.emplace(v, static_cast<std::uint32_t>(points.size()));
      points.push_back(v);
    }
  }

  std::uint32_t normalise(std::vector<Elem> v) const {
    auto first = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
    if (first == v.end()) throw InternalError("projective space: zero vector");
    const Elem s = F->inv(*first);
    for (auto& e : v) e = F->mul(e, s);
    return index.at(v);
  }

  std::string label(std::uint32_t p) const {
    std::ostringstream os;
    os << '<';
    for (int i = 0; i < dim; ++i) {
      if (i) os << ',';
      os << F->to_string(points[p][i]);
    }
    os << '>';
    return os.str();
  }

  // Points on the line spanned by two distinct points, sorted.
  std::vector<std::uint32_t> line_through(std::uint32_t a, std::uint32_t b) const {
    std::vector<std::uint32_t> out{a};
    for (Elem lambda = 0; lambda < F->q(); ++lambda) {
      std::vector<Elem> v(dim);
      for (int i = 0; i < dim; ++i) v[i] = F->add(points[b][i], F->mul(lambda, points[a][i]));
      out.push_back(normalise(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Flags (point, line) of a point-line geometry; lines given as sorted point lists.
void flag_residue(const ProjectiveSpace& space, const std::vector<std::vector<std::uint32_t>>& lines,
                  std::vector<std::string>& labels, std::vector<std::vector<std::uint32_t>>& panels) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> flags;
  for (std::uint32_t l = 0; l < lines.size(); ++l) {
    for (std::uint32_t p : lines[l]) flags.emplace_back(p, l);
  }
  std::sort(flags.begin(), flags.end());
  panels.assign(2, std::vector<std::uint32_t>(flags.size()));
  labels.clear();
  for (std::size_t c = 0; c < flags.size(); ++c) {
    panels[0][c] = flags[c].second;  // same line, point varies
    panels[1][c] = flags[c].first;   // same point, line varies
    labels.push_back(space.label(flags[c].first) + "|L" + std::to_string(flags[c].second));
  }
}

}  // namespace

void ResidueModel::finish(const std::vector<std::vector<std::uint32_t>>& panels_by_slot) {
  const auto members = mask_members(type_);
  const std::size_t n = chamber_count_;
  for (TypeMask t = 0; t <= type_; ++t) {
    if ((t & type_) != t) continue;
    UnionFind uf(n);
    for (std::size_t s = 0; s < members.size(); ++s) {
      if (!(t & (TypeMask{1} << members[s]))) continue;
      std::map<std::uint32_t, std::uint32_t> first_in_panel;
      for (std::uint32_t c = 0; c < n; ++c) {
        auto [it, fresh] = first_in_panel.emplace(panels_by_slot[s][c], c);
        if (!fresh) uf.unite(it->second, c);
      }
    }
    std::vector<std::uint32_t> block(n);
    std::vector<std::uint32_t> reps;
    std::map<std::uint32_t, std::uint32_t> id_of_root;
    for (std::uint32_t c = 0; c < n; ++c) {
      auto [it, fresh] = id_of_root.emplace(uf.find(c), static_cast<std::uint32_t>(reps.size()));
      if (fresh) reps.push_back(c);
      block[c] = it->second;
    }
    blocks_.emplace(t, std::move(block));
    block_reps_.emplace(t, std::move(reps));
  }
}

ResidueModel ResidueModel::product_of_lines(std::shared_ptr<const LeviModel> levi) {
  ResidueModel r;
  r.kind_ = ResidueKind::product_of_lines;
  r.type_ = levi->type();
  r.q_ = levi->field().q();
  r.chamber_count_ = levi->chamber_count();
  const auto& members = levi->members();
  std::vector<std::vector<std::uint32_t>> panels(members.size(), std::vector<std::uint32_t>(r.chamber_count_));
  const std::uint32_t base = r.q_ + 1;
  for (std::uint32_t c = 0; c < r.chamber_count_; ++c) {
    const auto coords = levi->chamber_coords(c);
    std::ostringstream os;
    os << '(';
    for (std::size_t s = 0; s < coords.size(); ++s) {
      if (s) os << ',';
      os << coords[s];
    }
    os << ')';
    r.labels_.push_back(os.str());
    for (std::size_t s = 0; s < members.size(); ++s) {
      // Panel of type j through c: vary coordinate j, keep the others.
      auto key = coords;
      key[s] = base;
      std::uint32_t code = 0;
      for (std::size_t k = key.size(); k-- > 0;) code = code * (base + 1) + key[k];
      panels[s][c] = code;
    }
  }
  r.levi_ = std::move(levi);
  r.finish(panels);
  return r;
}

ResidueModel ResidueModel::a2_plane(const FieldCtx& F, TypeMask j) {
  if (mask_size(j) != 2) throw InvalidArgument("residue_A2: type must have two generators");
  ProjectiveSpace plane(F, 3);
  // Lines of PG(2,q) as point sets, ordered by their dual normalised vector.
  std::vector<std::vector<std::uint32_t>> lines;
  for (const auto& dual : plane.points) {
    std::vector<std::uint32_t> pts;
    for (std::uint32_t p = 0; p < plane.points.size(); ++p) {
      Elem dot = 0;
      for (int i = 0; i < 3; ++i) dot = F.add(dot, F.mul(dual[i], plane.points[p][i]));
      if (dot == 0) pts.push_back(p);
    }
    lines.push_back(std::move(pts));
  }
  ResidueModel r;
  r.kind_ = ResidueKind::a2_plane;
  r.type_ = j;
  r.q_ = F.q();
  std::vector<std::vector<std::uint32_t>> panels;
  flag_residue(plane, lines, r.labels_, panels);
  r.chamber_count_ = r.labels_.size();
  r.finish(panels);
  return r;
}

ResidueModel ResidueModel::b2_quadrangle(const FieldCtx& F, TypeMask j) {
  if (mask_size(j) != 2) throw InvalidArgument("residue_B2: type must have two generators");
  ProjectiveSpace space(F, 4);
  auto form = [&](const std::vector<Elem>& x, const std::vector<Elem>& y) {
    Elem v = F.sub(F.mul(x[0], y[1]), F.mul(x[1], y[0]));
    return F.add(v, F.sub(F.mul(x[2], y[3]), F.mul(x[3], y[2])));
  };
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::vector<std::uint32_t>> lines;
  const auto np = static_cast<std::uint32_t>(space.points.size());
  for (std::uint32_t a = 0; a < np; ++a) {
    for (std::uint32_t b = a + 1; b < np; ++b) {
      if (form(space.points[a], space.points[b]) != 0) continue;
      auto line = space.line_through(a, b);
      if (seen.insert(line).second) lines.push_back(std::move(line));
    }
  }
  std::sort(lines.begin(), lines.end());
  ResidueModel r;
  r.kind_ = ResidueKind::b2_quadrangle;
  r.type_ = j;
  r.q_ = F.q();
  std::vector<std::vector<std::uint32_t>> panels;
  flag_residue(space, lines, r.labels_, panels);
  r.chamber_count_ = r.labels_.size();
  r.finish(panels);
  return r;
}

ResidueModel ResidueModel::counting_only(const CoxeterMatrix& m, TypeMask j, std::int64_t q) {
  ResidueModel r;
  r.kind_ = ResidueKind::counting_only;
  r.type_ = j;
  r.q_ = static_cast<std::uint32_t>(q);
  r.chamber_count_ = static_cast<std::uint64_t>(poincare_polynomial(m, j).eval(q));
  return r;
}

const std::vector<std::uint32_t>& ResidueModel::blocks(TypeMask t) const {
  if (!geometric()) throw InvalidArgument("residue of type " + mask_label(type_) + " is counting-only");
  auto it = blocks_.find(t);
  if (it == blocks_.end()) throw InvalidArgument("residue: type " + mask_label(t) + " not within " + mask_label(type_));
  return it->second;
}

std::uint32_t ResidueModel::block_count(TypeMask t) const {
  blocks(t);
  return static_cast<std::uint32_t>(block_reps_.at(t).size());
}

std::uint32_t ResidueModel::block_representative(TypeMask t, std::uint32_t block) const {
  blocks(t);
  return block_reps_.at(t).at(block);
}

bool ResidueModel::block_contains(TypeMask big, std::uint32_t b_big, TypeMask small, std::uint32_t b_small) const {
  if ((small & big) != small) return false;
  return blocks(big)[block_representative(small, b_small)] == b_big;
}

std::optional<std::size_t> StarPoset::node_index(TypeMask t, std::uint32_t block) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].type == t && nodes[i].block == block) return i;
  }
  return std::nullopt;
}

StarPoset star_poset(const ResidueModel& r) {
  if (!r.geometric()) throw InvalidArgument("star_poset: residue of type " + mask_label(r.type()) + " is counting-only");
  StarPoset sp;
  sp.type = r.type();
  std::vector<TypeMask> types;
  for (TypeMask t = 0; t <= r.type(); ++t) {
    if ((t & r.type()) == t) types.push_back(t);
  }
  std::stable_sort(types.begin(), types.end(), [](TypeMask a, TypeMask b) { return mask_size(a) < mask_size(b); });
  for (TypeMask t : types) {
    const std::uint32_t count = r.block_count(t);
    sp.count_by_type[t] = count;
    for (std::uint32_t b = 0; b < count; ++b) sp.nodes.push_back({t, b});
  }
  for (std::size_t lo = 0; lo < sp.nodes.size(); ++lo) {
    const auto& a = sp.nodes[lo];
    for (TypeMask t : types) {
      if (t == a.type || (a.type & t) != a.type) continue;
      const std::uint32_t up_block = r.blocks(t)[r.block_representative(a.type, a.block)];
      sp.relations.emplace_back(lo, *sp.node_index(t, up_block));
    }
  }
  std::sort(sp.relations.begin(), sp.relations.end());
  return sp;
}

bool is_left_transversal(const FiniteActionGroup& h, const FiniteActionGroup& v, const FiniteActionGroup& u,
                         const std::vector<std::size_t>& reps) {
  if (!is_subgroup(u, v) || !is_subgroup(v, h)) return false;
  if (reps.size() * u.order() != v.order()) return false;
  for (std::size_t r : reps) {
    if (!v.find(h.key(r))) return false;
  }
  for (std::size_t a = 0; a < reps.size(); ++a) {
    const std::size_t ainv = h.inverse(reps[a]);
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      if (u.find(h.key(h.multiply(ainv, reps[b])))) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> transversal_from_cosets(const FiniteActionGroup& h, const FiniteActionGroup& v,
                                                              const FiniteActionGroup& u,
                                                              const std::vector<std::size_t>& t_hu,
                                                              const std::vector<std::size_t>& t_hv) {
  if (!is_subgroup(u, v) || !is_subgroup(v, h)) throw InvalidArgument("transversal_from_cosets: need U <= V <= H");
  if (!is_left_transversal(h, h, u, t_hu)) throw InvalidArgument("transversal_from_cosets: invalid transversal of H/U");
  if (!is_left_transversal(h, h, v, t_hv)) throw InvalidArgument("transversal_from_cosets: invalid transversal of H/V");
  std::vector<std::vector<std::size_t>> out;
  out.reserve(t_hv.size());
  for (std::size_t a : t_hv) {
    const std::size_t ainv = h.inverse(a);
    std::vector<std::size_t> bj;
    for (std::size_t c : t_hu) {
      const std::size_t x = h.multiply(ainv, c);
      // c U lies in a V exactly when a^-1 c is in V.
      if (v.find(h.key(x))) bj.push_back(x);
    }
    out.push_back(std::move(bj));
  }
  return out;
}

}  // namespace kml
