#include "kml/constructions.hpp"
#include "kml/field.hpp"
#include "kml/levi.hpp"
#include "kml/mat2.hpp"
#include "kml/surface.hpp"

#include <benchmark/benchmark.h>

using namespace kml;

namespace {

std::vector<std::vector<int>> cartan(int n, bool cycle) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, -2));
  for (int i = 0; i < n; ++i) {
    rows[i][i] = 2;
    if (cycle) rows[i][(i + 1) % n] = rows[(i + 1) % n][i] = 0;
  }
  return rows;
}

void field_multiply(benchmark::State& state) {
  const auto F = FieldCtx::make(2, static_cast<std::uint32_t>(state.range(0)));
  Elem acc = F.generator();
  for (auto _ : state) {
    acc = F.mul(acc, F.generator());
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(field_multiply)->Arg(3)->Arg(8);

// Closure of SL_2(q) from two random-looking elements.
void sl2_generation(benchmark::State& state) {
  auto F = std::make_shared<const FieldCtx>(FieldCtx::make(static_cast<std::uint32_t>(state.range(0)), 1));
  auto model = LeviModel::rank_one(F);
  const auto all = enumerate_sl2(*F);
  const std::vector<LeviElement> gens{model->from_factor(0, all[7]), model->from_factor(0, all[all.size() / 3])};
  for (auto _ : state) benchmark::DoNotOptimize(FiniteActionGroup::generate(model, gens).order());
}
BENCHMARK(sl2_generation)->Arg(7)->Arg(13);

void chamber_transitive_verify(benchmark::State& state) {
  ConstructionRequest req;
  req.cartan = cartan(4, true);
  req.p = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_ra_chamber_transitive(req).verified());
}
BENCHMARK(chamber_transitive_verify)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void tessellation_search(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_tessellation(static_cast<int>(state.range(0)), 8, 1'000'000).nodes);
  }
}
BENCHMARK(tessellation_search)->Arg(5)->Arg(6);

void surface_verify(benchmark::State& state) {
  ConstructionRequest req;
  req.which = ConstructionKind::bourdon_surface;
  req.cartan = cartan(5, true);
  req.p = 5;
  req.faces = 8;
  for (auto _ : state) benchmark::DoNotOptimize(build_bourdon_surface(req).verified());
}
BENCHMARK(surface_verify)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
