// Serial vs OpenMP timings for the three parallel kernels. Outputs are
// identical across modes; only wall time differs.

#include <benchmark/benchmark.h>

#include "dilutron/asymptotics.hpp"
#include "dilutron/ensemble_search.hpp"
#include "dilutron/oracles.hpp"

using namespace dilutron;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel; }

void BM_SearchRestarts(benchmark::State& state) {
  const auto rho = random_density(Dims{3, 3}, 3, 1);
  OptimizerConfig cfg;
  cfg.restarts = 16;
  cfg.seed = 1;
  const EnsembleSearch search(rho, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(search.run(MemberObjective::ky_fan(1), mode(state)));
}
BENCHMARK(BM_SearchRestarts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GentleDraws(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gentle_suite(7, 2000, mode(state)));
}
BENCHMARK(BM_GentleDraws)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DivergenceScan(benchmark::State& state) {
  const auto rho = random_density(Dims{2, 2}, 3, 2);
  const auto cq = cq_extension(ensemble_from_isometry(rho, random_isometry(4, 3, 3)));
  const auto sigma = random_density(Dims{4, 1}, 4, 4);
  const auto grid = default_gamma_grid(0.0, 101);
  for (auto _ : state) benchmark::DoNotOptimize(divergence_scan(cq, sigma, {1, 2}, grid, mode(state)));
}
BENCHMARK(BM_DivergenceScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
