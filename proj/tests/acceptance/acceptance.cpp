// Acceptance gate: one PASS/FAIL line per criterion. Every criterion runs
// twice; criterion 8 compares the two transcripts byte for byte.

#include "kml/constructions.hpp"
#include "kml/coxeter.hpp"
#include "kml/error.hpp"
#include "kml/group.hpp"
#include "kml/levi.hpp"
#include "kml/mat2.hpp"
#include "kml/rank_one.hpp"
#include "kml/report.hpp"
#include "kml/residue.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace kml;

namespace {

using Rows = std::vector<std::vector<int>>;

// Collects failures and a transcript; the transcript is what must be reproducible.
struct Run {
  std::ostringstream log;
  std::vector<std::string> failures;
  double seconds = 0;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::shared_ptr<const FieldCtx> field(std::uint32_t p, std::uint32_t h = 1) {
  return std::make_shared<const FieldCtx>(FieldCtx::make(p, h));
}

Rows cartan(int n, const std::vector<std::pair<int, int>>& commuting = {}) {
  Rows rows(n, std::vector<int>(n, -2));
  for (int i = 0; i < n; ++i) rows[i][i] = 2;
  for (auto [i, j] : commuting) rows[i][j] = rows[j][i] = 0;
  return rows;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint32_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p) continue;
    std::uint32_t h = 0;
    for (std::uint32_t r = q; r > 1; r /= p) ++h;
    return {p, h};
  }
  return {q, 1};
}

ConstructionRequest request(ConstructionKind k, Rows a, std::uint32_t q) {
  ConstructionRequest r;
  r.which = k;
  r.cartan = std::move(a);
  std::tie(r.p, r.h) = prime_power(q);
  return r;
}

std::string stat(const ConstructionResult& r, const std::string& key) {
  for (const auto& [k, v] : r.stats) {
    if (k == key) return v;
  }
  return "<missing>";
}

// Runs the verify stage and appends the report to the transcript.
Outcome verified(Run& run, const ConstructionRequest& req, const std::string& name) {
  auto o = run_stage(req, Stage::verify);
  run.log << "## " << name << "\n" << render_report(o);
  run.expect(o.verdict == Verdict::pass, name + ": verdict " + to_string(o.verdict) + " " + o.message);
  return o;
}

std::uint64_t power(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Orders, orbits and Borel intersections of the mirror groups.
void mirror_groups(Run& run) {
  for (std::uint32_t h : {1u, 2u, 3u}) {
    auto F = field(2, h);
    const std::uint32_t q = F->q();
    const auto a = build_Ai(AiCase::p2, F, GCM::validate(cartan(3)), 1);
    const auto orbits = a.orbits();
    run.log << "p2 q=" << q << " order " << a.order() << " orbits " << orbits.size() << "\n";
    run.expect(a.order() == q + 1 && a.is_cyclic(), "p2 order at q=" + std::to_string(q));
    run.expect(orbits.size() == 1, "p2 transitivity at q=" + std::to_string(q));
    run.expect(a.point_stabilizer(0).order() == 1, "p2 Borel intersection at q=" + std::to_string(q));
  }
  for (std::uint32_t q : {3u, 7u, 11u}) {
    auto F = field(q);
    const auto a = build_Ai(AiCase::q3mod4, F, GCM::validate(cartan(3)), 0);
    const auto& model = a.model();
    // Sylow 2-subgroup of the split torus: the sign changes.
    const auto t0 = FiniteActionGroup::generate(model, {model->from_torus({{q - 1, 1, 1}}),
                                                        model->from_torus({{1, q - 1, 1}}),
                                                        model->from_torus({{1, 1, q - 1}})});
    const auto stab = a.point_stabilizer(0);
    run.log << "q3 q=" << q << " order " << a.order() << " orbits " << a.orbits().size() << " stabiliser "
            << stab.order() << "\n";
    const std::string at = " at q=" + std::to_string(q);
    run.expect(a.order() == 8 * (q + 1), "q3 order" + at);
    run.expect(a.orbits().size() == 1, "q3 transitivity" + at);
    run.expect(t0.order() == 8 && stab.order() == 8 && is_subgroup(t0, stab), "q3 Borel intersection" + at);
  }
  for (std::uint32_t q : {5u, 13u}) {
    auto F = field(q);
    const auto a = build_Ai(AiCase::q1mod4, F, GCM::validate(cartan(2)), 0);
    const auto orbits = a.orbits();
    bool free = true;
    for (std::size_t g = 1; g < a.order(); ++g) {
      for (std::uint32_t x = 0; x <= q; ++x) free = free && a.act(g, x) != x;
    }
    run.log << "q1 q=" << q << " order " << a.order() << " orbits " << orbits.size() << "\n";
    const std::string at = " at q=" + std::to_string(q);
    run.expect(a.order() == (q + 1) / 2 && a.is_cyclic(), "q1 order" + at);
    run.expect(orbits.size() == 2 && orbits[0].size() == orbits[1].size(), "q1 two equal orbits" + at);
    run.expect(free, "q1 fixed points" + at);
  }
}

// Block counts of commuting residues against (q+1)^k and Poincare ratios.
void index_law(Run& run) {
  const auto rows = cartan(3, {{0, 1}, {0, 2}, {1, 2}});
  const auto m = CoxeterMatrix::from_gcm(GCM::validate(rows));
  for (std::uint32_t q : {2u, 3u, 5u}) {
    auto F = field(q);
    std::size_t pairs = 0;
    for (TypeMask j = 1; j < 8; ++j) {
      auto model = std::make_shared<const LeviModel>(F, GCM::validate(rows), j);
      const auto r = ResidueModel::product_of_lines(model);
      for (TypeMask sub = 0; sub < j; ++sub) {
        if ((sub & ~j) != 0) continue;
        const int gap = __builtin_popcount(j & ~sub);
        const std::uint64_t expected = power(q + 1, gap);
        const std::uint64_t counted = std::uint64_t{r.block_count(sub)} / r.block_count(j);
        const auto ratio = parabolic_index(m, j, sub, q);
        // Every J-block splits into the same number of J'-blocks.
        std::vector<std::uint64_t> split(r.block_count(j), 0);
        for (std::uint32_t b = 0; b < r.block_count(sub); ++b) {
          for (std::uint32_t big = 0; big < r.block_count(j); ++big) {
            if (r.block_contains(j, big, sub, b)) ++split[big];
          }
        }
        bool even = true;
        for (auto s : split) even = even && s == expected;
        ++pairs;
        run.log << "q=" << q << " " << j << ">" << sub << " " << counted << " " << ratio << "\n";
        run.expect(counted == expected && even && ratio == static_cast<std::int64_t>(expected),
                   "index " + std::to_string(j) + ":" + std::to_string(sub) + " at q=" + std::to_string(q));
      }
    }
    run.expect(pairs == 19, "pair count at q=" + std::to_string(q));
  }
}

// Every coset check over T -> T' has domain and index |P_T' : P_T|.
void check_tallies(Run& run, const ConstructionResult& r, const CoxeterMatrix& m, std::int64_t q,
                   const std::string& name) {
  if (!r.certificate || !r.morphism) {
    run.expect(false, name + ": no certificate");
    return;
  }
  const auto& t = *r.morphism->target;
  for (const auto& ck : r.certificate->checks) {
    const auto& b = t.scwol.edge(ck.target_edge);
    const auto want = static_cast<std::size_t>(parabolic_index(m, t.vertex_type(b.t), t.vertex_type(b.i), q));
    if (ck.index != want || ck.domain != want) {
      run.expect(false, name + ": tally " + std::to_string(ck.domain) + "/" + std::to_string(ck.index) +
                            " != " + std::to_string(want));
      return;
    }
  }
}

void chamber_transitive(Run& run) {
  const std::vector<std::pair<std::string, Rows>> shapes{
      {"n2", cartan(2)}, {"n3", cartan(3)}, {"n3_commuting", cartan(3, {{0, 1}})},
      {"square", cartan(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})}};
  for (const auto& [shape, rows] : shapes) {
    const auto m = CoxeterMatrix::from_gcm(GCM::validate(rows));
    for (std::uint32_t q : {2u, 4u, 3u, 7u}) {
      const std::string name = shape + " q=" + std::to_string(q);
      const auto o = verified(run, request(ConstructionKind::ra_chamber_transitive, rows, q), name);
      if (!o.result) continue;
      const auto& r = *o.result;
      run.expect(r.verified(), name + ": not verified");
      check_tallies(run, r, m, q, name);
      // Mutations: shrink A_{1} to the image of A_empty, drop the first and last edges.
      const auto& phi = *r.morphism;
      const auto& src = *phi.source;
      const auto v1 = phi.target->vertex_of(0b1);
      std::vector<std::size_t> keep{0};
      for (std::uint32_t a = 0; a < src.base.edge_count(); ++a) {
        if (src.base.edge(a).t == v1) keep = src.psi[a];
      }
      const auto shrunk = verify_covering(with_shrunken_group(phi, v1, keep));
      run.expect(!shrunk.pass && !shrunk.witnesses().empty(), name + ": shrunken group passes");
      const auto edges = phi.source->base.edge_count();
      for (const std::uint32_t a : std::vector<std::uint32_t>{0, static_cast<std::uint32_t>(edges - 1)}) {
        const auto dropped = verify_covering(without_source_edge(phi, a));
        run.expect(!dropped.pass && !dropped.witnesses().empty(), name + ": dropped edge passes");
        run.log << name << " drop " << a << ": " << dropped.witnesses().front() << "\n";
      }
      run.log << name << " shrink: " << (shrunk.witnesses().empty() ? "" : shrunk.witnesses().front()) << "\n";
    }
  }
}

void two_orbit(Run& run) {
  for (int n : {2, 3, 4}) {
    for (std::uint32_t q : {5u, 13u}) {
      const std::string name = "n" + std::to_string(n) + " q=" + std::to_string(q);
      const auto o = verified(run, request(ConstructionKind::ra_two_orbit, cartan(n), q), name);
      if (!o.result) continue;
      const auto& r = *o.result;
      run.expect(stat(r, "covolume") == "2", name + ": covolume " + stat(r, "covolume"));
      if (!r.certificate) continue;
      for (const auto& ck : r.certificate->checks) {
        if (ck.fibre != 2) run.expect(false, name + ": fibre " + std::to_string(ck.fibre));
      }
    }
  }
}

void surface(Run& run) {
  auto req = request(ConstructionKind::bourdon_surface, cartan(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}), 5);
  req.faces = 8;
  req.budget = 1'000'000;
  const auto o = verified(run, req, "surface n=5 F=8 q=5");
  if (!o.result || !o.result->surface) {
    run.expect(false, "no surface");
    return;
  }
  const auto& r = *o.result;
  const auto& s = *o.result->surface;
  const std::int64_t faces = 8, n = 5;
  run.expect(s.euler_characteristic() == -2, "euler characteristic");
  run.expect(static_cast<std::int64_t>(s.vertex_count) == faces * n / 4, "V = Fn/4");
  run.expect(static_cast<std::int64_t>(s.edge_count()) == faces * n / 2, "E = Fn/2");
  // Signed geodesic chains (the chain carries the chosen sign).
  std::vector<std::int64_t> sum(s.edge_count(), 0);
  for (const auto& g : s.geodesics) {
    const auto c = s.chain(g);
    for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += c[e];
  }
  run.expect(is_nullhomologous(s, {sum}), "geodesic sum not a boundary");
  run.expect(stat(r, "geodesic_sum_bounds") == "true", "geodesic_sum_bounds stat");
  run.expect(stat(r, "fibres.vertex_over_chamber") == "4", "vertex fibre");
  run.expect(stat(r, "fibres.vertex_over_panel") == "2", "vertex over panel fibre");
  run.expect(stat(r, "fibres.panel_over_chamber") == "2", "panel fibre");
}

void free_products(Run& run) {
  const Rows a1a1{{2, -2}, {-2, 2}};
  const Rows a2a1{{2, -1, -2}, {-1, 2, -2}, {-2, -2, 2}};
  const Rows b2a1{{2, -2, -2}, {-1, 2, -2}, {-2, -2, 2}};
  const Rows a1a1a1 = cartan(3);
  const std::vector<std::tuple<std::string, Rows, std::uint32_t, std::string>> cases{
      {"A1*A1", a1a1, 2, "4"},  {"A1*A1", a1a1, 3, "9"},   {"A1*A1", a1a1, 5, "25"},
      {"A2*A1", a2a1, 2, "40"}, {"B2*A1", b2a1, 2, "88"}, {"A1*A1*A1", a1a1a1, 2, "28"}};
  for (const auto& [shape, rows, q, rank] : cases) {
    const std::string name = shape + " q=" + std::to_string(q);
    const auto o = verified(run, request(ConstructionKind::fp_free, rows, q), name);
    if (!o.result) continue;
    const auto& r = *o.result;
    const auto tree = stat(r, "free_rank.tree");
    run.expect(stat(r, "mode") == "geometric", name + ": mode " + stat(r, "mode"));
    run.expect(tree == stat(r, "free_rank.formula") && tree == stat(r, "free_rank.chains"), name + ": ranks differ");
    run.expect(tree == rank, name + ": rank " + tree + " != " + rank);
  }
}

// Independent check: reps lie in V, are pairwise inequivalent mod U and number |V:U|.
bool transversal_oracle(const FiniteActionGroup& h, const FiniteActionGroup& v, const FiniteActionGroup& u,
                        const std::vector<std::size_t>& reps) {
  const auto vin = embed_elements(v, h);
  const auto uin = embed_elements(u, h);
  const std::set<std::size_t> vset(vin.begin(), vin.end()), uset(uin.begin(), uin.end());
  if (reps.size() * u.order() != v.order()) return false;
  for (auto r : reps) {
    if (!vset.count(r)) return false;
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (uset.count(h.multiply(h.inverse(reps[i]), reps[j]))) return false;
    }
  }
  return true;
}

void transversals(Run& run) {
  std::mt19937 rng(20261018);
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> fields{{2, 2}, {3, 1}, {5, 1}, {7, 1},
                                                                    {3, 2}, {11, 1}, {13, 1}, {17, 1}};
  int chains = 0, nontrivial = 0;
  std::size_t largest = 0;
  while (chains < 200) {
    const auto [p, h] = fields[chains % fields.size()];
    auto F = field(p, h);
    auto model = LeviModel::rank_one(F);
    const auto sl2 = enumerate_sl2(*F);
    std::uniform_int_distribution<std::size_t> any(0, sl2.size() - 1);
    const auto big = FiniteActionGroup::generate(model, {model->from_factor(0, sl2[any(rng)]),
                                                         model->from_factor(0, sl2[any(rng)])},
                                                 5000);
    std::uniform_int_distribution<std::size_t> pick(0, big.order() - 1);
    // Alternate cyclic and two-generated middle groups.
    std::vector<std::size_t> vgens{pick(rng)};
    if (chains % 2) vgens.push_back(pick(rng));
    const auto v = big.subgroup_generated(vgens);
    const auto vin = embed_elements(v, big);
    std::uniform_int_distribution<std::size_t> in_v(0, v.order() - 1);
    const auto u = big.subgroup_generated({vin[in_v(rng)]});
    const auto bs = transversal_from_cosets(big, v, u, coset_transversal(big, u), coset_transversal(big, v));
    bool ok = bs.size() == big.order() / v.order();
    for (const auto& b : bs) ok = ok && is_left_transversal(big, v, u, b) && transversal_oracle(big, v, u, b);
    run.log << "chain " << chains << ": " << big.order() << " " << v.order() << " " << u.order() << "\n";
    run.expect(ok, "chain " + std::to_string(chains));
    largest = std::max(largest, big.order());
    if (u.order() < v.order() && v.order() < big.order()) ++nontrivial;
    ++chains;
  }
  run.log << "largest " << largest << " strict " << nontrivial << "\n";
  run.expect(largest <= 5000, "group too large");
  run.expect(nontrivial >= 50, "too few strict chains: " + std::to_string(nontrivial));
}

struct Criterion {
  std::string title;
  double seconds_limit;
  std::function<void(Run&)> body;
};

Run execute(const Criterion& c) {
  Run run;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.body(run);
  } catch (const std::exception& e) {
    run.expect(false, std::string("exception: ") + e.what());
  }
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"mirror group orders, orbits and Borel intersections", 10, mirror_groups},
      {"residue index law", 60, index_law},
      {"chamber-transitive certificates, tallies and mutations", 60, chamber_transitive},
      {"two-orbit certificates", 30, two_orbit},
      {"surface lattice n=5 F=8 q=5", 300, surface},
      {"free product certificates and ranks", 60, free_products},
      {"transversals from cosets", 60, transversals},
  };
  bool all = true;
  bool same = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const Run first = execute(c);
    const Run second = execute(c);
    const bool identical = first.log.str() == second.log.str();
    same = same && identical;
    bool ok = first.failures.empty() && first.seconds < c.seconds_limit;
    const auto text = first.log.str();
    const auto lines = std::count(text.begin(), text.end(), '\n');
    std::printf("%s criterion %zu: %s (%.2f s, %td transcript lines)\n", ok ? "PASS" : "FAIL", i + 1,
                c.title.c_str(), first.seconds, lines);
    for (const auto& f : first.failures) std::printf("  %s\n", f.c_str());
    if (first.seconds >= c.seconds_limit) std::printf("  over the %.0f s limit\n", c.seconds_limit);
    if (!identical) std::printf("  second run differs\n");
    all = all && ok;
  }
  std::printf("%s criterion 8: determinism of all transcripts\n", same ? "PASS" : "FAIL");
  all = all && same;
  return all ? 0 : 1;
}
