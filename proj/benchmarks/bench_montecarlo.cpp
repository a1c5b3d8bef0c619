#include <benchmark/benchmark.h>

#include <vector>

#include "speckledip/fields.hpp"
#include "speckledip/montecarlo.hpp"
#include "speckledip/rng.hpp"

using namespace speckledip;

namespace {

ExperimentConfig bench_config() {
  ExperimentConfig cfg;
  cfg.n_mean = 0.05;
  return cfg;
}

}  // namespace

static void BM_PhiloxBlock(benchmark::State& state) {
  std::uint32_t ctr = 0;
  for (auto _ : state) {
    const philox::Block out =
        philox::philox4x32_10({{ctr++, 1, 2, 3}}, 0xdeadbeef, 0xcafef00d);
    benchmark::DoNotOptimize(out.x[0]);
  }
}
BENCHMARK(BM_PhiloxBlock);

static void BM_SampleSpeckle(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) {
    PulseRng rng(1, i++);
    const SpeckleDraw d = sample_speckle(rng, 0.05);
    benchmark::DoNotOptimize(d.v_plus);
  }
}
BENCHMARK(BM_SampleSpeckle);

static void BM_SimulatePulse(benchmark::State& state) {
  const ExperimentConfig cfg = bench_config();
  const PulseEnvelope env(cfg.tau_p);
  const TimeGrid grid = TimeGrid::pulse_support(cfg.tau_p, 0.0);
  const GatedKernel kernel(env, 0.0, grid);
  std::uint64_t i = 0;
  for (auto _ : state) {
    PulseRng rng(1, i++);
    const DetectionEvent ev = simulate_pulse(rng, cfg, kernel, BlockedArm::none);
    benchmark::DoNotOptimize(ev.coincident);
  }
}
BENCHMARK(BM_SimulatePulse);

static void BM_RunSweep(benchmark::State& state) {
  RunSpec spec;
  spec.config = bench_config();
  spec.n_pulses = 100'000;
  spec.seed = 7;
  const std::vector<double> delays = {0.0, 1e-12, 2e-12};
  for (auto _ : state) {
    const auto results =
        run_sweep(spec, delays, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(results.front().coincidences.value);
  }
  state.SetItemsProcessed(state.iterations() * spec.n_pulses * delays.size());
}
BENCHMARK(BM_RunSweep)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
