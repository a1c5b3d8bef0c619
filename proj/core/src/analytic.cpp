#include "speckledip/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "speckledip/fields.hpp"

namespace speckledip {

double singles_rate(double eta, double n_mean) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("singles_rate: eta must lie in [0, 1]");
  if (!(n_mean >= 0.0))
    throw std::invalid_argument("singles_rate: n_mean must be >= 0");
  return eta * n_mean;
}

double overlap_magnitude_sq(double delta_t, double tau_p) {
  if (!(tau_p > 0.0))
    throw std::invalid_argument("overlap_magnitude_sq: tau_p must be > 0");
  const double r = delta_t / tau_p;
  return std::exp(-r * r);
}

double overlap_magnitude_sq_numeric(const PulseEnvelope& env, double delta_t,
                                    const TimeGrid& grid) {
  const double c = GatedKernel(env, delta_t, grid).overlap();
  return c * c;
}

double coincidence_rate(double eta, double n_mean, double delta_t,
                        double tau_p) {
  const double s = singles_rate(eta, n_mean);
  return 0.5 * s * s * (3.0 - overlap_magnitude_sq(delta_t, tau_p));
}

double corrected_coincidence_rate(double eta, double n_mean, double delta_t,
                                  double tau_p) {
  const double s = singles_rate(eta, n_mean);
  return 0.5 * s * s * (1.0 - overlap_magnitude_sq(delta_t, tau_p));
}

std::optional<double> visibility(double c_max, double c_min) {
  if (!(c_min >= 0.0) || !(c_max >= c_min))
    throw std::invalid_argument("visibility: need c_max >= c_min >= 0");
  if (c_max == 0.0) return std::nullopt;  // no signal
  return (c_max - c_min) / (c_max + c_min);
}

double peak_ratio(double eta, double n_mean) {
  return 1.5 * singles_rate(eta, n_mean);
}

std::vector<DipPrediction> dip_curve(const ExperimentConfig& config,
                                     std::span<const double> delta_ts) {
  config.validate();
  if (delta_ts.empty())
    throw std::invalid_argument("dip_curve: empty delay list");
  std::vector<DipPrediction> curve;
  curve.reserve(delta_ts.size());
  for (double dt : delta_ts) {
    DipPrediction p;
    p.delta_t = dt;
    p.overlap_sq = overlap_magnitude_sq(dt, config.tau_p);
    p.singles_rate = singles_rate(config.eta, config.n_mean);
    p.coincidence_rate =
        coincidence_rate(config.eta, config.n_mean, dt, config.tau_p);
    p.corrected_rate =
        corrected_coincidence_rate(config.eta, config.n_mean, dt, config.tau_p);
    curve.push_back(p);
  }
  return curve;
}

}  // namespace speckledip
