#include <benchmark/benchmark.h>

#include "speckledip/analytic.hpp"
#include "speckledip/exact_probability.hpp"
#include "speckledip/fields.hpp"

using namespace speckledip;

static void BM_GatedKernelBuild(benchmark::State& state) {
  const PulseEnvelope env(345e-15);
  const TimeGrid grid = TimeGrid::pulse_support(345e-15, 1e-12);
  for (auto _ : state) {
    const GatedKernel kernel(env, 1e-12, grid);
    benchmark::DoNotOptimize(kernel.overlap());
  }
}
BENCHMARK(BM_GatedKernelBuild);

static void BM_OverlapNumeric(benchmark::State& state) {
  const PulseEnvelope env(345e-15);
  const TimeGrid grid = TimeGrid::pulse_support(345e-15, 5e-13);
  for (auto _ : state)
    benchmark::DoNotOptimize(overlap_magnitude_sq_numeric(env, 5e-13, grid));
}
BENCHMARK(BM_OverlapNumeric);

static void BM_ExactCoincidence(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.eta = 0.4;
  cfg.n_mean = 0.5;
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_coincidence_probability(cfg, 1e-13));
}
BENCHMARK(BM_ExactCoincidence);

static void BM_GaussLaguerreRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    // rule() memoizes, so rebuild explicitly through a fresh order each
    // iteration is not possible; measure the cached lookup plus one sum.
    const GaussLaguerre& gl = GaussLaguerre::rule(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += gl.weights[i];
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_GaussLaguerreRule)->Arg(32)->Arg(128);

BENCHMARK_MAIN();
