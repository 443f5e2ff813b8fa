#include <benchmark/benchmark.h>

#include "proxsmooth/dispersion.hpp"
#include "proxsmooth/mathkit.hpp"
#include "proxsmooth/prox.hpp"
#include "proxsmooth/solver.hpp"

namespace ps = proxsmooth;

namespace {

ps::Vec random_vec(int n, std::uint64_t seed) {
  ps::CounterRng rng(seed, 99);
  ps::Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-5.0, 5.0);
  return v;
}

void BM_ProjectSimplex(benchmark::State& state) {
  const auto v = random_vec(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::project_simplex(v));
  }
}
BENCHMARK(BM_ProjectSimplex)->Arg(10)->Arg(100)->Arg(1000);

void BM_ProxMax(benchmark::State& state) {
  const auto v = random_vec(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::prox_max(0.5, v));
  }
}
BENCHMARK(BM_ProxMax)->Arg(10)->Arg(100)->Arg(1000);

void BM_ProxScaledL1(benchmark::State& state) {
  const auto v = random_vec(static_cast<int>(state.range(0)), 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::prox_scaled_l1(1.0, 0.5, v));
  }
}
BENCHMARK(BM_ProxScaledL1)->Arg(10)->Arg(1000);

void BM_DispersionSolve(benchmark::State& state) {
  const auto inst = ps::dispersion::random_dispersion_instance(10, static_cast<int>(state.range(0)), 5, 1);
  const auto problem = ps::dispersion::build_dispersion_problem(inst);
  const auto x1 = ps::dispersion::random_feasible_init(inst, 1);
  ps::SolverConfig cfg;
  cfg.time_limit_sec = 60.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::solve(problem, x1, cfg));
  }
}
BENCHMARK(BM_DispersionSolve)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
