#include "speckledip/pulse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace speckledip {

PulseEnvelope::PulseEnvelope(double tau_p) : tau_p_(tau_p) {
  if (!(tau_p > 0.0) || !std::isfinite(tau_p))
    throw std::invalid_argument("PulseEnvelope: tau_p must be positive");
  inv_tau_sq_ = 1.0 / (tau_p * tau_p);
  norm_ = std::pow(std::numbers::pi * tau_p * tau_p / 2.0, -0.25);
}

double PulseEnvelope::value(double t) const {
  return norm_ * std::exp(-t * t * inv_tau_sq_);
}

}  // namespace speckledip
