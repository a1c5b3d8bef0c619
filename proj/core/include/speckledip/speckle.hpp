#pragma once

#include <complex>

namespace speckledip {

/// Per-pulse pair of frozen speckle amplitudes, one per fiber, in
/// sqrt(photon) units. Statistically these are independent zero-mean
/// isotropic complex Gaussians with <|v|^2> = n_mean; the struct itself
/// is just the value.
struct SpeckleDraw {
  std::complex<double> v_plus{0.0, 0.0};
  std::complex<double> v_minus{0.0, 0.0};

  double phi_plus() const { return std::arg(v_plus); }
  double phi_minus() const { return std::arg(v_minus); }

  /// Fringe phase phi_minus - phi_plus.
  double delta_phi() const { return phi_minus() - phi_plus(); }
};

}  // namespace speckledip
