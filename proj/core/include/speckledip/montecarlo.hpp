#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "speckledip/analytic.hpp"
#include "speckledip/config.hpp"
#include "speckledip/fields.hpp"
#include "speckledip/rng.hpp"
#include "speckledip/speckle.hpp"

namespace speckledip {

enum class BlockedArm { none, plus_blocked, minus_blocked };

/// One Monte Carlo run: configuration, trial count, seed, and which arm
/// (if any) is blocked for accidental estimation.
struct RunSpec {
  ExperimentConfig config;
  std::uint64_t n_pulses = 1'000'000;
  std::uint64_t seed = 1;
  BlockedArm blocked_arm = BlockedArm::none;

  void validate() const;  // config invariants plus n_pulses >= 1
};

/// Outcome of one gated pulse at the two detectors.
struct DetectionEvent {
  std::uint32_t counts_1 = 0;
  std::uint32_t counts_2 = 0;
  bool coincident = false;  // counts_1 >= 1 and counts_2 >= 1
};

struct Estimate {
  double value = 0.0;
  double se = 0.0;  // standard error, >= 0
};

/// Empirical rates at one delay, with binomial standard errors and the
/// closed-form reference computed from the same configuration.
struct SweepResult {
  double delta_t = 0.0;
  Estimate singles_1;
  Estimate singles_2;
  Estimate coincidences;
  std::optional<Estimate> accidentals;  // filled by estimate_accidentals
  DipPrediction analytic_ref{};
  std::uint64_t n_pulses = 0;
  std::uint64_t seed = 0;
};

/// Draws (v+, v-) as independent isotropic complex Gaussians with
/// <|v|^2> = n_mean, from the pulse's speckle lanes:
/// v = sqrt(n_mean/2) (g_a + i g_b) with standard normal g_a, g_b.
SpeckleDraw sample_speckle(PulseRng& rng, double n_mean);

/// Simulates one gated pulse: draws the speckle (zeroing a blocked arm),
/// integrates the gated energies W1, W2, then draws conditionally
/// independent Poisson counts with means eta*W1 and eta*W2. A click is
/// counts >= 1; the low-flux coincidence functional is the N << 1 limit
/// of this detection model.
DetectionEvent simulate_pulse(PulseRng& rng, const ExperimentConfig& config,
                              const GatedKernel& kernel, BlockedArm blocked);

/// Convenience overload building the default pulse-support grid for the
/// given delay. Identical output to the kernel overload.
DetectionEvent simulate_pulse(PulseRng& rng, const ExperimentConfig& config,
                              double delta_t, BlockedArm blocked);

/// Runs n_pulses independent trials at every delay. Pulse index i of
/// delay j uses the globally unique stream index
/// (purpose * n_delays + j) * n_pulses + i, with purpose derived from the
/// blocked arm, so raw and blocked sweeps never share randomness and the
/// result is bit-identical for a given (seed, spec, delays) regardless of
/// thread count or execution order. n_threads = 0 picks the hardware
/// concurrency.
std::vector<SweepResult> run_sweep(const RunSpec& spec,
                                   std::span<const double> delta_ts,
                                   int n_threads = 0);

/// Accidental coincidence rate per delay: the sum of the plus-blocked and
/// minus-blocked coincidence rates, each from its own sweep of
/// spec.n_pulses trials. Expectation eta^2 N^2 for N << 1, independent of
/// delay.
std::vector<Estimate> estimate_accidentals(const RunSpec& spec,
                                           std::span<const double> delta_ts,
                                           int n_threads = 0);

/// Sample moment of the speckle sampler with target value and standard
/// error, for the circular-Gaussian identities <v> = <v^2> = 0,
/// <|v|^2> = N, <|v|^4> = 2 N^2, <v+ v-*> = 0.
struct MomentCheck {
  std::string name;
  double value = 0.0;
  double se = 0.0;
  double target = 0.0;
};

/// Estimates the first, second and fourth moments of both arms plus the
/// cross moment over n_samples draws. Throws std::invalid_argument when
/// n_samples < 1000 (below that the standard errors are not meaningful).
std::vector<MomentCheck> moment_check(std::uint64_t seed, double n_mean,
                                      std::uint64_t n_samples);

}  // namespace speckledip
