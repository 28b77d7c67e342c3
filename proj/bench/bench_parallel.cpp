// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "inar/inference.hpp"
#include "inar/montecarlo.hpp"
#include "inar/simulate.hpp"

namespace {

using namespace inar;

McConfig case1(std::int64_t T, std::size_t n) {
  McConfig c;
  c.params = ModelParams::geometric(100.0, 0.25);
  c.T = T;
  c.n_experiments = n;
  return c;
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto config = case1(state.range(0), 64);
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(config).mse);
  state.SetItemsProcessed(state.iterations() * 64);
}

void BM_MonteCarloParallel(benchmark::State& state) {
  auto config = case1(state.range(0), 64);
  config.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(config).mse);
  state.SetItemsProcessed(state.iterations() * 64);
}

struct SandwichInput {
  CountPath path;
  ThetaVector theta;
};

SandwichInput sandwich_input(std::int64_t T) {
  RngStream rng(1, 0);
  SandwichInput in;
  in.path = simulate_path(ModelParams::geometric(100.0, 0.25), T, rng);
  in.theta = solve_cls(build_design(in.path, 10));
  return in;
}

void BM_SandwichSerial(benchmark::State& state) {
  const auto in = sandwich_input(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sandwich_covariance_serial(in.path, in.theta, 10).Sigma_hat(0, 0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SandwichParallel(benchmark::State& state) {
  const auto in = sandwich_input(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sandwich_covariance(in.path, in.theta, 10).Sigma_hat(0, 0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_MonteCarloSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Args({1000, 1})->Args({1000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SandwichSerial)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SandwichParallel)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
