// Serial reference loop against the OpenMP block driver, plus the per-draw
// kernels that dominate a walk.

#include <benchmark/benchmark.h>

#include <cmath>

#include "fracwos/montecarlo.hpp"
#include "fracwos/problem.hpp"
#include "fracwos/rng.hpp"
#include "fracwos/stable.hpp"
#include "fracwos/wos.hpp"

namespace {

using namespace fracwos;

ProblemSpec green_problem(double alpha) {
  const StableParams params(alpha, 2);
  return ProblemSpec{.domain = Domain::ball(Point{0.0, 0.0}, 1.0),
                     .params = params,
                     .g = ExteriorData::green(Point{2.0, 0.0}, params),
                     .f = std::nullopt,
                     .eval_points = {Point{0.6, 0.6}},
                     .tol = std::nullopt,
                     .n_samples = 0,
                     .seed = 1,
                     .eps_skin = 0.0,
                     .n_inner = 1000,
                     .step_cap = 1'000'000};
}

void BM_EstimateSerial(benchmark::State& state) {
  const auto problem = green_problem(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_fixed_serial(problem, Point{0.6, 0.6}, state.range(0), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateSerial)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

void BM_EstimateParallel(benchmark::State& state) {
  const auto problem = green_problem(1.0);
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_fixed(problem, Point{0.6, 0.6}, state.range(0), 1, workers));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateParallel)->Args({1 << 14, 1})->Args({1 << 14, 2})->Args({1 << 14, 4})->Unit(
    benchmark::kMillisecond);

void BM_ExitRadiusQuantile(benchmark::State& state) {
  const StableParams params(static_cast<double>(state.range(0)) / 10.0, 2);
  RngStream rng(3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(exit_radius_quantile(rng.uniform(), params));
}
BENCHMARK(BM_ExitRadiusQuantile)->Arg(5)->Arg(10)->Arg(15);

void BM_OccupationWeight(benchmark::State& state) {
  const StableParams params(static_cast<double>(state.range(0)) / 10.0, 2);
  RngStream rng(3, 0);
  for (auto _ : state) {
    const double r = sample_occupation_radius(params.alpha(), rng);
    benchmark::DoNotOptimize(occupation_profile(r * r, params));
  }
}
BENCHMARK(BM_OccupationWeight)->Arg(5)->Arg(10)->Arg(15);

void BM_SourceIncrement(benchmark::State& state) {
  const StableParams params(1.0, 2);
  const auto f = SourceTerm::dyda(1.0);
  RngStream rng(3, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(source_increment(Point{0.1, 0.2}, 0.3, f, params, 1000, rng));
  }
}
BENCHMARK(BM_SourceIncrement)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
