#include "speckledip/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace speckledip {

void RunSpec::validate() const {
  config.validate();
  if (n_pulses < 1)
    throw std::invalid_argument("RunSpec: n_pulses must be >= 1");
}

SpeckleDraw sample_speckle(PulseRng& rng, double n_mean) {
  if (!(n_mean >= 0.0))
    throw std::invalid_argument("sample_speckle: n_mean must be >= 0");
  const double scale = std::sqrt(n_mean / 2.0);
  Substream plus = rng.lane(kLaneSpecklePlus);
  Substream minus = rng.lane(kLaneSpeckleMinus);
  // Sequenced explicitly: argument evaluation order must not matter.
  const double pa = plus.normal();
  const double pb = plus.normal();
  const double ma = minus.normal();
  const double mb = minus.normal();
  return {{scale * pa, scale * pb}, {scale * ma, scale * mb}};
}

DetectionEvent simulate_pulse(PulseRng& rng, const ExperimentConfig& config,
                              const GatedKernel& kernel, BlockedArm blocked) {
  SpeckleDraw draw = sample_speckle(rng, config.n_mean);
  if (blocked == BlockedArm::plus_blocked) draw.v_plus = 0.0;
  if (blocked == BlockedArm::minus_blocked) draw.v_minus = 0.0;
  const GatedEnergies w = kernel.energies(draw);
  Substream det1 = rng.lane(kLaneDetector1);
  Substream det2 = rng.lane(kLaneDetector2);
  DetectionEvent event;
  event.counts_1 = sample_poisson(det1, config.eta * w.port1);
  event.counts_2 = sample_poisson(det2, config.eta * w.port2);
  event.coincident = event.counts_1 >= 1 && event.counts_2 >= 1;
  return event;
}

DetectionEvent simulate_pulse(PulseRng& rng, const ExperimentConfig& config,
                              double delta_t, BlockedArm blocked) {
  const PulseEnvelope env(config.tau_p);
  const TimeGrid grid = TimeGrid::pulse_support(config.tau_p, delta_t);
  const GatedKernel kernel(env, delta_t, grid);
  return simulate_pulse(rng, config, kernel, blocked);
}

namespace {

struct PulseCounts {
  std::uint64_t clicks_1 = 0;
  std::uint64_t clicks_2 = 0;
  std::uint64_t coincidences = 0;
};

// Integer counters commute, so any partition of the index range gives the
// sequential result bit for bit.
PulseCounts accumulate_pulses(const ExperimentConfig& config,
                              const GatedKernel& kernel, BlockedArm blocked,
                              std::uint64_t seed, std::uint64_t index_base,
                              std::uint64_t n_pulses, int n_threads) {
  unsigned workers = n_threads > 0
                         ? static_cast<unsigned>(n_threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  if (workers > n_pulses) workers = static_cast<unsigned>(n_pulses);

  auto worker = [&](std::uint64_t lo, std::uint64_t hi, PulseCounts& out) {
    PulseCounts local;
    for (std::uint64_t i = lo; i < hi; ++i) {
      PulseRng rng(seed, index_base + i);
      const DetectionEvent ev = simulate_pulse(rng, config, kernel, blocked);
      local.clicks_1 += ev.counts_1 >= 1;
      local.clicks_2 += ev.counts_2 >= 1;
      local.coincidences += ev.coincident;
    }
    out = local;
  };

  std::vector<PulseCounts> partials(workers);
  if (workers == 1) {
    worker(0, n_pulses, partials[0]);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::uint64_t chunk = (n_pulses + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, n_pulses);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, n_pulses);
      threads.emplace_back(worker, lo, hi, std::ref(partials[w]));
    }
    for (auto& t : threads) t.join();
  }

  PulseCounts total;
  for (const PulseCounts& p : partials) {
    total.clicks_1 += p.clicks_1;
    total.clicks_2 += p.clicks_2;
    total.coincidences += p.coincidences;
  }
  return total;
}

Estimate binomial_estimate(std::uint64_t count, std::uint64_t n) {
  const double p = static_cast<double>(count) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

std::uint64_t purpose_of(BlockedArm blocked) {
  switch (blocked) {
    case BlockedArm::none: return 0;
    case BlockedArm::plus_blocked: return 1;
    case BlockedArm::minus_blocked: return 2;
  }
  return 0;
}

}  // namespace

std::vector<SweepResult> run_sweep(const RunSpec& spec,
                                   std::span<const double> delta_ts,
                                   int n_threads) {
  spec.validate();
  if (delta_ts.empty())
    throw std::invalid_argument("run_sweep: empty delay list");

  const PulseEnvelope env(spec.config.tau_p);
  const std::uint64_t purpose = purpose_of(spec.blocked_arm);
  std::vector<SweepResult> results;
  results.reserve(delta_ts.size());

  for (std::size_t j = 0; j < delta_ts.size(); ++j) {
    const double dt = delta_ts[j];
    const TimeGrid grid = TimeGrid::pulse_support(spec.config.tau_p, dt);
    const GatedKernel kernel(env, dt, grid);
    const std::uint64_t base =
        (purpose * delta_ts.size() + j) * spec.n_pulses;
    const PulseCounts counts =
        accumulate_pulses(spec.config, kernel, spec.blocked_arm, spec.seed,
                          base, spec.n_pulses, n_threads);

    SweepResult r;
    r.delta_t = dt;
    r.singles_1 = binomial_estimate(counts.clicks_1, spec.n_pulses);
    r.singles_2 = binomial_estimate(counts.clicks_2, spec.n_pulses);
    r.coincidences = binomial_estimate(counts.coincidences, spec.n_pulses);
    r.analytic_ref = dip_curve(spec.config, std::span(&dt, 1)).front();
    r.n_pulses = spec.n_pulses;
    r.seed = spec.seed;
    results.push_back(r);
  }
  return results;
}

std::vector<Estimate> estimate_accidentals(const RunSpec& spec,
                                           std::span<const double> delta_ts,
                                           int n_threads) {
  RunSpec plus = spec;
  plus.blocked_arm = BlockedArm::plus_blocked;
  RunSpec minus = spec;
  minus.blocked_arm = BlockedArm::minus_blocked;

  const std::vector<SweepResult> with_plus_blocked =
      run_sweep(plus, delta_ts, n_threads);
  const std::vector<SweepResult> with_minus_blocked =
      run_sweep(minus, delta_ts, n_threads);

  std::vector<Estimate> accidentals;
  accidentals.reserve(delta_ts.size());
  for (std::size_t j = 0; j < delta_ts.size(); ++j) {
    const Estimate& a = with_plus_blocked[j].coincidences;
    const Estimate& b = with_minus_blocked[j].coincidences;
    accidentals.push_back({a.value + b.value, std::hypot(a.se, b.se)});
  }
  return accidentals;
}

std::vector<MomentCheck> moment_check(std::uint64_t seed, double n_mean,
                                      std::uint64_t n_samples) {
  if (n_samples < 1000)
    throw std::invalid_argument("moment_check: need n_samples >= 1000");
  if (!(n_mean >= 0.0))
    throw std::invalid_argument("moment_check: n_mean must be >= 0");

  // Statistics per arm: Re v, Im v, Re v^2, Im v^2, |v|^2, |v|^4,
  // then the cross moment Re/Im of v+ conj(v-).
  constexpr int kStats = 14;
  double sum[kStats] = {};
  double sum_sq[kStats] = {};

  for (std::uint64_t i = 0; i < n_samples; ++i) {
    PulseRng rng(seed, i);
    const SpeckleDraw d = sample_speckle(rng, n_mean);
    const std::complex<double> arms[2] = {d.v_plus, d.v_minus};
    double stat[kStats];
    for (int a = 0; a < 2; ++a) {
      const std::complex<double> v = arms[a];
      const std::complex<double> v2 = v * v;
      const double abs2 = std::norm(v);
      stat[6 * a + 0] = v.real();
      stat[6 * a + 1] = v.imag();
      stat[6 * a + 2] = v2.real();
      stat[6 * a + 3] = v2.imag();
      stat[6 * a + 4] = abs2;
      stat[6 * a + 5] = abs2 * abs2;
    }
    const std::complex<double> cross = d.v_plus * std::conj(d.v_minus);
    stat[12] = cross.real();
    stat[13] = cross.imag();
    for (int s = 0; s < kStats; ++s) {
      sum[s] += stat[s];
      sum_sq[s] += stat[s] * stat[s];
    }
  }

  const double n = static_cast<double>(n_samples);
  const double target_sq = 2.0 * n_mean * n_mean;
  const char* names[kStats] = {
      "Re<v+>",   "Im<v+>",   "Re<v+^2>", "Im<v+^2>", "<|v+|^2>", "<|v+|^4>",
      "Re<v->",   "Im<v->",   "Re<v-^2>", "Im<v-^2>", "<|v-|^2>", "<|v-|^4>",
      "Re<v+ v-*>", "Im<v+ v-*>"};
  const double targets[kStats] = {0.0, 0.0, 0.0,    0.0, n_mean, target_sq,
                                  0.0, 0.0, 0.0,    0.0, n_mean, target_sq,
                                  0.0, 0.0};

  std::vector<MomentCheck> checks;
  checks.reserve(kStats);
  for (int s = 0; s < kStats; ++s) {
    const double mean = sum[s] / n;
    const double var = std::max(0.0, sum_sq[s] / n - mean * mean);
    checks.push_back({names[s], mean, std::sqrt(var / n), targets[s]});
  }
  return checks;
}

}  // namespace speckledip
