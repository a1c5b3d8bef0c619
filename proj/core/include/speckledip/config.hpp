#pragma once

#include <string>
#include <vector>

namespace speckledip {

/// Physical parameters of one simulated run. All times are in seconds and
/// all lengths in meters; eta and n_mean are dimensionless.
///
/// n_mean is the mean energy per fiber per pulse in photon units, so the
/// optical carrier never enters any computed quantity and all field work
/// is done in baseband.
struct ExperimentConfig {
  double tau_p = 345e-15;         // pulse duration
  double delta_t = 0.0;           // nominal differential delay between the arms
  double gate = 1e-9;             // coincidence gate
  double eta = 0.1;               // detector quantum efficiency, in [0, 1]
  double n_mean = 0.0267;         // mean photon number per fiber per pulse
  double wavelength = 780e-9;
  double source_distance = 0.200; // diffuser to collection plane
  double source_diameter = 4.5e-3;

  /// Throws std::invalid_argument when a hard invariant is violated
  /// (tau_p <= 0, gate <= 0, eta outside [0,1], n_mean < 0, nonpositive
  /// geometry).
  void validate() const;

  /// Non-fatal regime notes. The closed forms assume the gate dwarfs the
  /// pulse support and that n_mean is deep in the photon-counting regime;
  /// leaving either regime does not invalidate the simulation, only the
  /// low-flux approximations, so these warn instead of failing.
  std::vector<std::string> warnings() const;
};

}  // namespace speckledip
