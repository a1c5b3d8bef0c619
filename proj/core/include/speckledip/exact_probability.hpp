#pragma once

#include <vector>

#include "speckledip/config.hpp"

namespace speckledip {

/// Gauss-Laguerre rule for integrals of exp(-x) g(x) on [0, inf).
/// Nodes and weights by Newton iteration on the Laguerre recurrence;
/// results are memoized per order.
struct GaussLaguerre {
  std::vector<double> nodes;
  std::vector<double> weights;

  static const GaussLaguerre& rule(int n);  // n in [1, 256]
};

struct QuadratureOptions {
  // Node-doubling stops once the change is below abs_floor + rel * |value|.
  double abs_floor = 1e-14;
  double rel = 1e-12;
  // Contractual accuracy: if the ladder is exhausted and the last change
  // still exceeds this, the quadrature throws instead of returning.
  double required_abs = 1e-10;
  int max_radial = 256;
  int max_angular = 512;
};

struct ExactClickProbabilities {
  double coincidence = 0.0;  // P(click at 1 and click at 2)
  double singles_1 = 0.0;    // P(click at 1)
  double singles_2 = 0.0;
};

/// Exact per-pulse click statistics of the semiclassical detection model,
/// with no low-flux approximation: the ensemble average of
/// (1 - exp(-eta W1)) (1 - exp(-eta W2)) over the speckle distribution.
///
/// The four-dimensional Gaussian average collapses to three dimensions
/// because the energies depend on the draw only through |v+|^2, |v-|^2
/// and the phase difference: exponential-weight Gauss-Laguerre in the two
/// radial variables, uniform (trapezoid) in the phase, doubling nodes
/// until converged. Valid at any n_mean; the low-flux closed form is its
/// n_mean -> 0 limit.
///
/// Throws std::runtime_error if node doubling fails to converge to
/// options.required_abs.
ExactClickProbabilities exact_click_probabilities(
    const ExperimentConfig& config, double delta_t,
    const QuadratureOptions& options = {});

/// Coincidence component of exact_click_probabilities.
double exact_coincidence_probability(const ExperimentConfig& config,
                                     double delta_t,
                                     const QuadratureOptions& options = {});

}  // namespace speckledip
