#include "kml/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "kml/error.hpp"

namespace kml {

std::size_t ComplexOfGroups::twist_of(std::uint32_t a, std::uint32_t b) const {
  auto it = twist.find({a, b});
  return it == twist.end() ? 0 : it->second;
}

bool ComplexOfGroups::trivial() const {
  return std::all_of(local.begin(), local.end(), [](const GroupPtr& g) { return !g || g->order() == 1; });
}

ComplexOfGroups ComplexOfGroups::trivial_over(Scwol s) {
  ComplexOfGroups c;
  c.local.assign(s.vertex_count(), nullptr);
  c.psi.assign(s.edge_count(), std::vector<std::size_t>{0});
  c.base = std::move(s);
  return c;
}

ComplexOfGroups ComplexOfGroups::by_inclusion(Scwol s, std::vector<GroupPtr> local) {
  if (local.size() != s.vertex_count()) throw InvalidArgument("complex: one local group per vertex required");
  ComplexOfGroups c;
  c.local = std::move(local);
  for (const auto& e : s.edges()) {
    const auto& from = c.local[e.i];
    const auto& to = c.local[e.t];
    if (!from) {
      c.psi.push_back({0});
    } else if (!to) {
      if (from->order() != 1) throw InvalidArgument("complex: nontrivial group included in a trivial one");
      c.psi.push_back({0});
    } else {
      c.psi.push_back(embed_elements(*from, *to));
    }
  }
  c.base = std::move(s);
  return c;
}

Diagnostics validate(const ComplexOfGroups& c) {
  Diagnostics d = validate(c.base);
  const Scwol& s = c.base;
  if (c.local.size() != s.vertex_count() || c.psi.size() != s.edge_count()) {
    d.fail("complex: local groups or edge maps missing");
    return d;
  }
  auto mul = [&](std::uint32_t v, std::size_t x, std::size_t y) { return c.local[v] ? c.local[v]->multiply(x, y) : 0; };
  auto inv = [&](std::uint32_t v, std::size_t x) { return c.local[v] ? c.local[v]->inverse(x) : 0; };
  bool shapes_ok = true;
  for (std::uint32_t a = 0; a < s.edge_count(); ++a) {
    const auto [from, to] = s.edge(a);
    const auto& map = c.psi[a];
    const std::string tag = "edge " + std::to_string(a);
    if (map.size() != c.order(from) ||
        std::any_of(map.begin(), map.end(), [&](std::size_t x) { return x >= c.order(to); })) {
      d.fail(tag + ": edge map has the wrong shape");
      shapes_ok = false;
      continue;
    }
    if (std::set<std::size_t>(map.begin(), map.end()).size() != map.size()) d.fail(tag + ": edge map not injective");
    if (c.local[from]) {
      const auto gens = c.local[from]->generating_set();
      for (std::size_t x = 0; x < map.size(); ++x) {
        for (std::size_t g : gens) {
          if (map[mul(from, x, g)] != mul(to, map[x], map[g])) {
            d.fail(tag + ": edge map not a homomorphism");
            x = map.size();
            break;
          }
        }
      }
    }
  }
  if (!shapes_ok) return d;
  for (const auto& [pair, ab] : s.compositions()) {
    const auto [a, b] = pair;
    const std::uint32_t top = s.edge(a).t;
    const std::size_t g = c.twist_of(a, b);
    if (g >= c.order(top)) {
      d.fail("twist of (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
      continue;
    }
    const std::size_t ginv = inv(top, g);
    for (std::size_t x = 0; x < c.order(s.edge(b).i); ++x) {
      if (mul(top, mul(top, g, c.psi[ab][x]), ginv) != c.psi[a][c.psi[b][x]]) {
        d.fail("edge maps of (" + std::to_string(a) + "," + std::to_string(b) + ") do not compose");
        break;
      }
    }
  }
  for (const auto& [ab_pair, ab] : s.compositions()) {
    const auto [a, b] = ab_pair;
    for (const auto& [bc_pair, bc] : s.compositions()) {
      if (bc_pair.first != b) continue;
      const std::uint32_t cc = bc_pair.second;
      const std::uint32_t top = s.edge(a).t;
      const auto lhs = mul(top, c.psi[a][c.twist_of(b, cc)], c.twist_of(a, bc));
      const auto rhs = mul(top, c.twist_of(a, b), c.twist_of(ab, cc));
      if (lhs != rhs) {
        d.fail("cocycle condition fails on (" + std::to_string(a) + "," + std::to_string(b) + "," +
               std::to_string(cc) + ")");
      }
    }
  }
  return d;
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational add(Rational a, Rational b) {
  const std::uint64_t g = std::gcd(a.den, b.den);
  Rational r{a.num * (b.den / g) + b.num * (a.den / g), a.den / g * b.den};
  const std::uint64_t h = std::gcd(r.num, r.den);
  if (h > 1) {
    r.num /= h;
    r.den /= h;
  }
  if (r.num == 0) r.den = 1;
  return r;
}

Rational covolume(const ComplexOfGroups& c) {
  Rational total;
  for (std::uint32_t v = 0; v < c.base.vertex_count(); ++v) {
    const auto& t = c.base.type(v);
    if (t && *t == 0) total = add(total, Rational{1, c.order(v)});
  }
  return total;
}

std::int64_t free_rank_trivial(const ComplexOfGroups& c) {
  if (!c.trivial()) throw InvalidArgument("free_rank_trivial: local groups are not all trivial");
  if (!is_connected(c.base)) throw InvalidArgument("free_rank_trivial: scwol is not connected");
  return 1 - euler_characteristic(c.base);
}

std::string Presentation::to_string() const {
  std::ostringstream os;
  os << "generators:";
  for (const auto& g : generators) os << ' ' << g;
  os << "\nrelators:";
  for (const auto& r : relators) os << ' ' << r;
  os << '\n';
  return os.str();
}

Presentation presentation_over_cone(const ComplexOfGroups& c) {
  const Scwol& s = c.base;
  std::map<TypeMask, std::uint32_t> vertex_of;
  for (std::uint32_t v = 0; v < s.vertex_count(); ++v) {
    if (!s.type(v)) throw InvalidArgument("presentation_over_cone: untyped vertex " + s.name(v));
    if (!vertex_of.emplace(*s.type(v), v).second) {
      throw InvalidArgument("presentation_over_cone: type " + mask_label(*s.type(v)) + " occurs twice");
    }
  }
  auto cone = vertex_of.find(0);
  if (cone == vertex_of.end() || s.edges_from(cone->second).size() + 1 != s.vertex_count()) {
    throw InvalidArgument("presentation_over_cone: scwol is not a cone over the empty type");
  }
  if (c.order(cone->second) != 1) throw InvalidArgument("presentation_over_cone: chamber group is not trivial");

  Presentation p;
  std::map<int, std::string> gen;
  for (const auto& [t, v] : vertex_of) {
    if (mask_size(t) != 1) continue;
    const std::size_t n = c.order(v);
    if (n == 1) continue;
    if (!c.local[v]->is_cyclic()) throw InvalidArgument("presentation_over_cone: group at " + mask_label(t) + " is not cyclic");
    const int i = mask_members(t)[0];
    gen[i] = "a" + std::to_string(i + 1);
    p.generators.push_back(gen[i]);
    p.relators.push_back(gen[i] + "^" + std::to_string(n));
  }
  for (const auto& [t, v] : vertex_of) {
    if (mask_size(t) < 2) continue;
    std::size_t product = 1;
    for (int i : mask_members(t)) product *= c.order(vertex_of.at(TypeMask{1} << i));
    if (c.order(v) != product) {
      throw InvalidArgument("presentation_over_cone: group at " + mask_label(t) + " is not the product of its mirror groups");
    }
    if (mask_size(t) != 2) continue;
    const auto m = mask_members(t);
    if (gen.count(m[0]) && gen.count(m[1])) {
      const auto& x = gen[m[0]];
      const auto& y = gen[m[1]];
      p.relators.push_back(x + "*" + y + "*" + x + "^-1*" + y + "^-1");
    }
  }
  return p;
}

std::uint32_t TargetResidueFamily::vertex_of(TypeMask t) const {
  const auto k = lattice.index_of(t);
  if (!k) throw InvalidArgument("target: type " + mask_label(t) + " is not spherical");
  return static_cast<std::uint32_t>(*k);
}

std::shared_ptr<TargetResidueFamily> make_target(const CoxeterMatrix& m,
                                                 const std::map<TypeMask, std::shared_ptr<const ResidueModel>>& slots) {
  auto t = std::make_shared<TargetResidueFamily>();
  t->lattice = spherical_subsets(m);
  t->scwol = build_chamber_scwol(t->lattice);
  for (const auto& [type, r] : slots) {
    if (r->type() != type) throw InvalidArgument("target: residue type mismatch at " + mask_label(type));
    t->slot_for_type[type] = static_cast<std::uint32_t>(t->slots.size());
    t->slots.push_back(r);
  }
  return t;
}

void CogMorphism::set_inclusion_local_maps() {
  local.assign(source->base.vertex_count(), {});
  for (std::uint32_t v = 0; v < local.size(); ++v) {
    const auto& g = source->local[v];
    if (!g) continue;
    if (!g->has_labels()) throw InvalidArgument("local map: group at vertex " + std::to_string(v) + " has no witnesses");
    const auto& model = target->slots.at(frame.at(v).slot)->levi();
    if (!model) throw InvalidArgument("local map: slot of vertex " + std::to_string(v) + " has no group action");
    for (std::size_t x = 0; x < g->order(); ++x) local[v].push_back(model->embed(*g->model(), g->label(x)));
  }
}

std::vector<std::string> CoveringCertificate::witnesses() const {
  std::vector<std::string> out = morphism_violations;
  for (const auto& c : checks) {
    if (!c.ok) out.push_back(c.witness);
  }
  return out;
}

namespace {

struct Verifier {
  const CogMorphism& phi;
  const ComplexOfGroups& src;
  const TargetResidueFamily& tgt;
  const Scwol& y;
  const Scwol& k;
  CoveringCertificate cert;

  explicit Verifier(const CogMorphism& m)
      : phi(m), src(*m.source), tgt(*m.target), y(m.source->base), k(m.target->scwol) {}

  void violation(std::string msg) { cert.morphism_violations.push_back(std::move(msg)); }

  const ResidueModel& residue(std::uint32_t v) const { return *tgt.slots[phi.frame[v].slot]; }
  TypeMask ftype(std::uint32_t v) const { return tgt.vertex_type(phi.vertex_map[v]); }
  const LeviModel* model(std::uint32_t v) const { return residue(v).levi().get(); }

  LeviElement image(std::uint32_t v, std::size_t x) const {
    return phi.local[v].empty() ? model(v)->identity() : phi.local[v][x];
  }

  std::string vname(std::uint32_t v) const { return y.name(v); }
  std::string kedge(std::uint32_t b) const {
    return mask_label(tgt.vertex_type(k.edge(b).i)) + "->" + mask_label(tgt.vertex_type(k.edge(b).t));
  }

  bool shapes() {
    const auto nv = y.vertex_count();
    const auto ne = y.edge_count();
    if (phi.vertex_map.size() != nv || phi.frame.size() != nv || phi.local.size() != nv ||
        phi.edge_map.size() != ne || phi.edge_value.size() != ne || src.local.size() != nv || src.psi.size() != ne) {
      violation("morphism data does not match the source scwol");
      return false;
    }
    bool ok = true;
    for (std::uint32_t v = 0; v < nv; ++v) {
      if (phi.vertex_map[v] >= k.vertex_count() || phi.frame[v].slot >= tgt.slots.size()) {
        violation("vertex " + vname(v) + ": image or frame out of range");
        ok = false;
        continue;
      }
      const auto& r = residue(v);
      const TypeMask t = ftype(v);
      if (!r.geometric() || (t & r.type()) != t || phi.frame[v].block >= r.block_count(t)) {
        violation("vertex " + vname(v) + ": frame is not a block of type " + mask_label(t));
        ok = false;
      }
      if (!phi.local[v].empty() && (phi.local[v].size() != src.order(v) || !model(v))) {
        violation("vertex " + vname(v) + ": local map has the wrong shape");
        ok = false;
      }
    }
    for (std::uint32_t a = 0; a < ne; ++a) {
      if (phi.edge_map[a] >= k.edge_count()) {
        violation("edge " + std::to_string(a) + ": image out of range");
        ok = false;
      }
    }
    return ok;
  }

  void scwol_morphism() {
    for (std::uint32_t a = 0; a < y.edge_count(); ++a) {
      const auto& e = y.edge(a);
      const auto& fe = k.edge(phi.edge_map[a]);
      if (fe.i != phi.vertex_map[e.i] || fe.t != phi.vertex_map[e.t]) {
        violation("edge " + std::to_string(a) + ": endpoints not preserved");
      }
    }
    for (const auto& [pair, ab] : y.compositions()) {
      const auto fab = k.compose(phi.edge_map[pair.first], phi.edge_map[pair.second]);
      if (!fab || *fab != phi.edge_map[ab]) {
        violation("composition (" + std::to_string(pair.first) + "," + std::to_string(pair.second) +
                  ") not preserved");
      }
    }
    for (std::uint32_t v = 0; v < y.vertex_count(); ++v) {
      std::vector<std::uint32_t> images;
      for (std::uint32_t a : y.edges_from(v)) images.push_back(phi.edge_map[a]);
      std::sort(images.begin(), images.end());
      const auto expected = k.edges_from(phi.vertex_map[v]);
      if (images != expected) {
        violation("vertex " + vname(v) + ": degenerate, " + std::to_string(images.size()) + " outgoing edges onto " +
                  std::to_string(expected.size()));
      }
    }
  }

  void local_maps() {
    for (std::uint32_t v = 0; v < y.vertex_count(); ++v) {
      const auto& g = src.local[v];
      if (!g || g->order() == 1) continue;
      if (phi.local[v].empty()) {
        violation("vertex " + vname(v) + ": nontrivial group without a local map");
        continue;
      }
      const LeviModel& m = *model(v);
      std::set<ElementKey> keys;
      for (const auto& x : phi.local[v]) keys.insert(m.key(x));
      if (keys.size() != g->order()) violation("vertex " + vname(v) + ": local map not injective");
      const auto gens = g->generating_set();
      for (std::size_t x = 0; x < g->order(); ++x) {
        bool hom = true;
        for (std::size_t s : gens) {
          if (m.key(phi.local[v][g->multiply(x, s)]) != m.key(m.multiply(phi.local[v][x], phi.local[v][s]))) {
            hom = false;
            break;
          }
        }
        if (!hom) {
          violation("vertex " + vname(v) + ": local map not a homomorphism");
          break;
        }
      }
    }
  }

  // phi(a) moved into the model of the frame slot at t(a).
  void edge_values() {
    for (std::uint32_t a = 0; a < y.edge_count(); ++a) {
      const auto [from, to] = y.edge(a);
      const std::string tag = "edge " + std::to_string(a) + " (" + vname(from) + "->" + vname(to) + ")";
      if (const auto* flag = std::get_if<FlagCoset>(&phi.edge_value[a])) {
        if (src.order(from) != 1 || src.order(to) != 1) violation(tag + ": flag value on a nontrivial group");
        const auto& r = residue(to);
        const TypeMask lower = ftype(from);
        // A chamber may sit in several residues; its frame binds only in its own slot.
        const bool same_slot = phi.frame[from].slot == phi.frame[to].slot;
        if ((same_slot && flag->block != phi.frame[from].block) || (!same_slot && lower != 0)) {
          violation(tag + ": flag value is not the frame of its initial vertex");
        }
        if (flag->block >= r.block_count(lower)) {
          violation(tag + ": flag value out of range");
        } else if (!r.block_contains(ftype(to), phi.frame[to].block, lower, flag->block)) {
          violation(tag + ": flag value lies outside the frame of its terminal vertex");
        }
        continue;
      }
      const auto& value = std::get<LeviElement>(phi.edge_value[a]);
      const LeviModel* mt = model(to);
      const LeviModel* mi = model(from);
      if (!mt || !mi) {
        violation(tag + ": group value without a group action");
        continue;
      }
      const LeviElement inv = mt->inverse(value);
      for (std::size_t x = 0; x < src.order(from); ++x) {
        const auto lhs = mt->key(image(to, src.psi[a][x]));
        const auto rhs = mt->key(mt->multiply(mt->multiply(value, mt->embed(*mi, image(from, x))), inv));
        if (lhs != rhs) {
          violation(tag + ": square does not commute at element " + std::to_string(x));
          break;
        }
      }
    }
    for (const auto& [pair, ab] : y.compositions()) {
      const auto [a, b] = pair;
      const std::string tag = "pair (" + std::to_string(a) + "," + std::to_string(b) + ")";
      const auto* fa = std::get_if<FlagCoset>(&phi.edge_value[a]);
      const auto* fb = std::get_if<FlagCoset>(&phi.edge_value[b]);
      const auto* fab = std::get_if<FlagCoset>(&phi.edge_value[ab]);
      if (fa || fb || fab) {
        if (!(fa && fb && fab)) {
          violation(tag + ": mixed flag and group values");
        } else {
          const std::uint32_t top = y.edge(a).t;
          const std::uint32_t mid = y.edge(a).i;
          const std::uint32_t bottom = y.edge(b).i;
          const bool nested = residue(top).block_contains(ftype(mid), fa->block, ftype(bottom), fab->block);
          if (!nested || fab->block != fb->block) violation(tag + ": flag values not compatible");
        }
        continue;
      }
      const std::uint32_t top = y.edge(a).t;
      const std::uint32_t mid = y.edge(a).i;
      const LeviModel* mt = model(top);
      const LeviModel* mm = model(mid);
      if (!mt || !mm) continue;
      const auto lhs = mt->multiply(image(top, src.twist_of(a, b)), std::get<LeviElement>(phi.edge_value[ab]));
      const auto rhs =
          mt->multiply(std::get<LeviElement>(phi.edge_value[a]), mt->embed(*mm, std::get<LeviElement>(phi.edge_value[b])));
      if (mt->key(lhs) != mt->key(rhs)) violation(tag + ": edge values not compatible");
    }
  }

  CosetCheck check(std::uint32_t v, std::uint32_t b) const {
    CosetCheck out;
    out.vertex = v;
    out.target_edge = b;
    const auto& r = residue(v);
    const TypeMask top = ftype(v);
    const TypeMask lower = tgt.vertex_type(k.edge(b).i);
    const auto& top_blocks = r.blocks(top);
    const auto& low_blocks = r.blocks(lower);
    const std::uint32_t frame_block = phi.frame[v].block;
    std::set<std::uint32_t> targets;
    for (std::uint32_t c = 0; c < top_blocks.size(); ++c) {
      if (top_blocks[c] == frame_block) targets.insert(low_blocks[c]);
    }
    out.index = targets.size();
    const std::uint32_t base = r.block_representative(top, frame_block);
    const std::string where = "vertex " + vname(v) + " over " + kedge(b);

    std::map<std::uint32_t, std::string> hit;  // target block -> first preimage
    std::vector<std::string> problems;
    for (std::uint32_t a : y.edges_into(v)) {
      if (phi.edge_map[a] != b) continue;
      ++out.fibre;
      const std::string atag = "edge " + std::to_string(a);
      auto record = [&](std::uint32_t block, const std::string& who) {
        ++out.domain;
        if (!targets.count(block)) {
          problems.push_back(who + " leaves the frame");
          return;
        }
        auto [it, fresh] = hit.emplace(block, who);
        if (!fresh) problems.push_back(it->second + " and " + who + " collide at block " + std::to_string(block));
      };
      if (const auto* flag = std::get_if<FlagCoset>(&phi.edge_value[a])) {
        record(flag->block, atag);
        continue;
      }
      if (!model(v)) {
        record(r.block_count(lower), atag + " (no group action)");
        continue;
      }
      const LeviModel& m = *model(v);
      const auto& value = std::get<LeviElement>(phi.edge_value[a]);
      const std::uint32_t home = low_blocks[m.act(value, base)];
      // The coset map is well defined only if psi_a(G_{i(a)}) fixes the block of phi(a).
      for (std::size_t x = 0; x < src.order(y.edge(a).i); ++x) {
        const auto moved = m.multiply(image(v, src.psi[a][x]), value);
        if (low_blocks[m.act(moved, base)] != home) {
          problems.push_back(atag + ": coset map not well defined");
          break;
        }
      }
      std::vector<std::size_t> reps{0};
      if (src.local[v]) {
        std::vector<std::size_t> sub = src.psi[a];
        std::sort(sub.begin(), sub.end());
        reps = coset_transversal(*src.local[v], src.local[v]->subset(sub));
      }
      for (std::size_t g : reps) {
        const auto x = m.multiply(image(v, g), value);
        record(low_blocks[m.act(x, base)], atag + "/g" + std::to_string(g));
      }
    }
    out.image = hit.size();
    out.ok = problems.empty() && out.domain == out.index && out.image == out.index;
    if (!out.ok) {
      std::ostringstream os;
      os << where << ": domain " << out.domain << (out.domain < out.index ? " < " : out.domain > out.index ? " > " : " = ")
         << "index " << out.index << ", image " << out.image;
      if (!problems.empty()) os << "; " << problems.front();
      out.witness = os.str();
    }
    return out;
  }

  void run() {
    if (!shapes()) return;
    scwol_morphism();
    local_maps();
    edge_values();
    for (std::uint32_t v = 0; v < y.vertex_count(); ++v) {
      for (std::uint32_t b : k.edges_into(phi.vertex_map[v])) {
        try {
          cert.checks.push_back(check(v, b));
        } catch (const Error& e) {
          CosetCheck failed;
          failed.vertex = v;
          failed.target_edge = b;
          failed.witness = "vertex " + vname(v) + " over " + kedge(b) + ": " + e.what();
          cert.checks.push_back(failed);
        }
        if (!cert.checks.back().ok) ++cert.failed_checks;
      }
    }
  }
};

}  // namespace

CogMorphism without_source_edge(const CogMorphism& phi, std::uint32_t a) {
  auto src = std::make_shared<ComplexOfGroups>(*phi.source);
  src->base = phi.source->base.without_edge(a);
  src->psi.erase(src->psi.begin() + a);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> twists;
  auto shift = [a](std::uint32_t e) { return e > a ? e - 1 : e; };
  for (const auto& [pair, g] : phi.source->twist) {
    if (pair.first != a && pair.second != a) twists[{shift(pair.first), shift(pair.second)}] = g;
  }
  src->twist = std::move(twists);
  CogMorphism out = phi;
  out.source = src;
  out.edge_map.erase(out.edge_map.begin() + a);
  out.edge_value.erase(out.edge_value.begin() + a);
  return out;
}

CogMorphism with_shrunken_group(const CogMorphism& phi, std::uint32_t v, std::vector<std::size_t> keep) {
  const auto& old = phi.source->local.at(v);
  if (!old) throw InvalidArgument("with_shrunken_group: local group is already trivial");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  auto src = std::make_shared<ComplexOfGroups>(*phi.source);
  auto smaller = std::make_shared<const FiniteActionGroup>(old->subset(keep));
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t k = 0; k < smaller->order(); ++k) renumber[*old->find(smaller->key(k))] = k;
  const Scwol& s = src->base;
  for (std::uint32_t a = 0; a < s.edge_count(); ++a) {
    if (s.edge(a).t == v) {
      for (auto& x : src->psi[a]) {
        auto it = renumber.find(x);
        if (it == renumber.end()) throw InvalidArgument("with_shrunken_group: incoming edge image not kept");
        x = it->second;
      }
    }
    if (s.edge(a).i == v) {
      std::vector<std::size_t> restricted;
      for (std::size_t k = 0; k < smaller->order(); ++k) restricted.push_back(src->psi[a][*old->find(smaller->key(k))]);
      src->psi[a] = std::move(restricted);
    }
  }
  src->local[v] = smaller;
  CogMorphism out = phi;
  out.source = src;
  if (!out.local[v].empty()) {
    std::vector<LeviElement> images;
    for (std::size_t k = 0; k < smaller->order(); ++k) images.push_back(phi.local[v][*old->find(smaller->key(k))]);
    out.local[v] = std::move(images);
  }
  return out;
}

CoveringCertificate verify_covering(const CogMorphism& phi) {
  if (!phi.source || !phi.target) throw InvalidArgument("verify_covering: morphism without source or target");
  Verifier v(phi);
  v.run();
  v.cert.pass = v.cert.morphism_violations.empty() && v.cert.failed_checks == 0;
  return std::move(v.cert);
}

}  // namespace kml
