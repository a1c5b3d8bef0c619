#pragma once

namespace speckledip {

/// Transform-limited Gaussian pulse envelope with unit energy,
///   f(t) = exp(-t^2/tau_p^2) / (pi tau_p^2 / 2)^(1/4),
/// so that the integral of |f|^2 over all t equals 1. Real, even and
/// strictly positive.
class PulseEnvelope {
 public:
  /// Throws std::invalid_argument unless tau_p > 0.
  explicit PulseEnvelope(double tau_p);

  double tau_p() const { return tau_p_; }

  /// Envelope amplitude at time t, units 1/sqrt(seconds).
  double value(double t) const;

 private:
  double tau_p_;
  double inv_tau_sq_;
  double norm_;  // (pi tau_p^2 / 2)^(-1/4)
};

}  // namespace speckledip
