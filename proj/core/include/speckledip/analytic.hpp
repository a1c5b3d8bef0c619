#pragma once

#include <optional>
#include <span>
#include <vector>

#include "speckledip/config.hpp"
#include "speckledip/pulse.hpp"
#include "speckledip/time_grid.hpp"

namespace speckledip {

/// Closed-form predictions at one differential delay, per coincidence gate.
struct DipPrediction {
  double delta_t;
  double coincidence_rate;  // (eta^2 N^2 / 2) (3 - overlap_sq)
  double corrected_rate;    // (eta^2 N^2 / 2) (1 - overlap_sq)
  double singles_rate;      // eta N, independent of delay
  double overlap_sq;        // in [0, 1]
};

/// Singles rate eta * n_mean, counts per gate.
double singles_rate(double eta, double n_mean);

/// Squared magnitude of the normalized envelope overlap,
/// exp(-delta_t^2 / tau_p^2) for the Gaussian envelope. Even in delta_t,
/// 1 at zero delay, strictly decreasing in |delta_t|.
double overlap_magnitude_sq(double delta_t, double tau_p);

/// Same quantity by trapezoid quadrature of the overlap integral
/// |∫ f(t + delta_t/2) f(t - delta_t/2) dt|^2, for arbitrary (future)
/// envelopes and as an oracle for the closed form. Same grid guards as
/// gated_energies.
double overlap_magnitude_sq_numeric(const PulseEnvelope& env, double delta_t,
                                    const TimeGrid& grid);

/// Coincidence rate (eta^2 n^2 / 2) (3 - overlap_sq): the raw dip.
double coincidence_rate(double eta, double n_mean, double delta_t,
                        double tau_p);

/// Accidental-subtracted dip (eta^2 n^2 / 2) (1 - overlap_sq). The two
/// blocked-arm accidental rates are eta^2 n^2 / 2 each.
double corrected_coincidence_rate(double eta, double n_mean, double delta_t,
                                  double tau_p);

/// (c_max - c_min) / (c_max + c_min). Empty when both inputs are zero
/// (no signal); sweep tabulation needs the distinguished value rather
/// than an exception. Throws std::invalid_argument when c_min < 0 or
/// c_max < c_min.
std::optional<double> visibility(double c_max, double c_min);

/// Shoulder coincidence rate over singles rate, 3 eta n / 2.
double peak_ratio(double eta, double n_mean);

/// One DipPrediction per delay. Throws std::invalid_argument on an empty
/// delay list.
std::vector<DipPrediction> dip_curve(const ExperimentConfig& config,
                                     std::span<const double> delta_ts);

}  // namespace speckledip
