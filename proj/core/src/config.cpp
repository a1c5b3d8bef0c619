#include "speckledip/config.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace speckledip {

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("ExperimentConfig: " + what);
  };
  if (!(tau_p > 0.0)) fail("tau_p must be > 0");
  if (!(gate > 0.0)) fail("gate must be > 0");
  if (!(eta >= 0.0 && eta <= 1.0)) fail("eta must lie in [0, 1]");
  if (!(n_mean >= 0.0)) fail("n_mean must be >= 0");
  if (!(wavelength > 0.0)) fail("wavelength must be > 0");
  if (!(source_distance > 0.0)) fail("source_distance must be > 0");
  if (!(source_diameter > 0.0)) fail("source_diameter must be > 0");
  if (!std::isfinite(tau_p) || !std::isfinite(delta_t) || !std::isfinite(gate))
    fail("times must be finite");
}

std::vector<std::string> ExperimentConfig::warnings() const {
  std::vector<std::string> notes;
  const double support = tau_p + std::abs(delta_t);
  if (gate < 10.0 * support) {
    std::ostringstream os;
    os << "gate (" << gate << " s) is less than 10*(tau_p + |delta_t|) ("
       << 10.0 * support
       << " s); the closed-form rates assume the gate dwarfs the pulse";
    notes.push_back(os.str());
  }
  if (n_mean > 0.2) {
    std::ostringstream os;
    os << "n_mean = " << n_mean
       << " is outside the low-flux regime (> 0.2); the closed-form dip "
          "degrades, use the exact detection probability for reference";
    notes.push_back(os.str());
  }
  return notes;
}

}  // namespace speckledip
