#include <benchmark/benchmark.h>

#include "lvt/equilibrium.hpp"
#include "lvt/indicators.hpp"
#include "lvt/pde.hpp"
#include "lvt/philox.hpp"
#include "lvt/stochastic.hpp"

using namespace lvt;

static void BM_Laplacian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec gs{10, 10, n, n};
  const FieldPair s = InitialCondition{}.build(gs);
  for (auto _ : state) benchmark::DoNotOptimize(laplacian(gs, s.V));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(gs.size()));
}
BENCHMARK(BM_Laplacian)->Arg(61)->Arg(121)->Arg(241);

static void BM_Step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec gs{10, 10, n, n};
  const ModelParams p;
  const auto prof = eval_profiles(gs, p, SpatialProfile{});
  FieldPair s = InitialCondition{}.build(gs);
  for (auto _ : state) s = step(gs, p, prof.A, prof.mu, s, 1e-3);
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(gs.size()));
}
BENCHMARK(BM_Step)->Arg(61)->Arg(121);

static void BM_RadialProfiles(benchmark::State& state) {
  std::vector<double> d;
  for (int k = 0; k <= 1000; ++k) d.push_back(0.005 * k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(radial_steady_profiles(ModelParams{}, SpatialProfile{}, TaxSchedule::uniform(0.08), d));
  }
}
BENCHMARK(BM_RadialProfiles);

static void BM_Normals4(benchmark::State& state) {
  std::uint64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(normals4(42, 7, k++));
}
BENCHMARK(BM_Normals4);

static void BM_EnsembleYear(benchmark::State& state) {
  StochasticParams sp;
  sp.horizon = 1.0;
  sp.n_paths = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_paths(sp, ModelParams{}, 4.0, SpatialProfile{}, 1));
}
BENCHMARK(BM_EnsembleYear)->Arg(100)->Arg(1000);

static void BM_LorenzGini(benchmark::State& state) {
  std::vector<double> v, w;
  for (int k = 0; k < 3721; ++k) {
    v.push_back(static_cast<double>((k * 7919) % 3721));
    w.push_back(1.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(lorenz_gini(v, w));
}
BENCHMARK(BM_LorenzGini);
BENCHMARK_MAIN();
