#include "speckledip/exact_probability.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "speckledip/fields.hpp"
#include "speckledip/pulse.hpp"
#include "speckledip/time_grid.hpp"

namespace speckledip {

namespace {

// Newton iteration on the Laguerre recurrence (weight exp(-x), alpha = 0).
GaussLaguerre compute_rule(int n) {
  GaussLaguerre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.nodes[i - 2]);
    }
    double p1 = 0.0, p2 = 0.0;
    for (int it = 0; it < 200; ++it) {
      p1 = 1.0;
      p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
      }
      const double pp = n * (p1 - p2) / z;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-14 * std::max(1.0, std::abs(z))) break;
    }
    if (!std::isfinite(z) || z <= 0.0)
      throw std::runtime_error("GaussLaguerre: Newton iteration diverged");
    const double pp = n * (p1 - p2) / z;
    rule.nodes[i] = z;
    rule.weights[i] = -1.0 / (pp * n * p2);
  }
  return rule;
}

}  // namespace

const GaussLaguerre& GaussLaguerre::rule(int n) {
  if (n < 1 || n > 256)
    throw std::invalid_argument("GaussLaguerre: order must lie in [1, 256]");
  static std::map<int, GaussLaguerre> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

namespace {

// One evaluation of the 3D quadrature at fixed node counts. The energies
// at the output ports depend on the draw only through x = |v+|^2/N,
// y = |v-|^2/N (each Exp(1) distributed) and the phase difference:
//   W1/N = (x A+ + y A-)/2 + sqrt(x y) C cos(phi)
//   W2/N = (x A+ + y A-)/2 - sqrt(x y) C cos(phi)
// Cauchy-Schwarz gives C <= sqrt(A+ A-), so both energies are nonnegative
// at every node.
ExactClickProbabilities evaluate(double eta, double n_mean, double a_plus,
                                 double a_minus, double c, int n_radial,
                                 int n_angular) {
  const GaussLaguerre& gl = GaussLaguerre::rule(n_radial);
  std::vector<double> cos_phi(n_angular);
  for (int k = 0; k < n_angular; ++k) {
    const double phi =
        2.0 * std::numbers::pi * (k + 0.5) / static_cast<double>(n_angular);
    cos_phi[k] = std::cos(phi);
  }
  const double inv_m = 1.0 / static_cast<double>(n_angular);

  ExactClickProbabilities out;
  for (int i = 0; i < n_radial; ++i) {
    const double x = gl.nodes[i];
    const double wx = gl.weights[i];
    if (wx == 0.0) continue;  // underflowed tail weight
    for (int j = 0; j < n_radial; ++j) {
      const double y = gl.nodes[j];
      const double w = wx * gl.weights[j];
      if (w == 0.0) continue;
      const double mean_part = 0.5 * n_mean * (x * a_plus + y * a_minus);
      const double fringe_part = n_mean * std::sqrt(x * y) * c;
      double sum_both = 0.0, sum_1 = 0.0, sum_2 = 0.0;
      for (int k = 0; k < n_angular; ++k) {
        const double w1 = mean_part + fringe_part * cos_phi[k];
        const double w2 = mean_part - fringe_part * cos_phi[k];
        const double miss1 = std::exp(-eta * w1);
        const double miss2 = std::exp(-eta * w2);
        sum_1 += 1.0 - miss1;
        sum_2 += 1.0 - miss2;
        sum_both += (1.0 - miss1) * (1.0 - miss2);
      }
      out.coincidence += w * sum_both * inv_m;
      out.singles_1 += w * sum_1 * inv_m;
      out.singles_2 += w * sum_2 * inv_m;
    }
  }
  return out;
}

}  // namespace

ExactClickProbabilities exact_click_probabilities(
    const ExperimentConfig& config, double delta_t,
    const QuadratureOptions& options) {
  config.validate();
  if (config.n_mean == 0.0 || config.eta == 0.0) return {};

  const PulseEnvelope env(config.tau_p);
  const TimeGrid grid = TimeGrid::pulse_support(config.tau_p, delta_t);
  const GatedKernel kernel(env, delta_t, grid);

  ExactClickProbabilities best{};
  double prev = std::numeric_limits<double>::quiet_NaN();
  double change = std::numeric_limits<double>::infinity();
  int n_radial = 16, n_angular = 16;
  while (true) {
    best = evaluate(config.eta, config.n_mean, kernel.norm_plus(),
                    kernel.norm_minus(), kernel.overlap(), n_radial,
                    n_angular);
    if (!std::isnan(prev)) {
      change = std::abs(best.coincidence - prev);
      if (change <= options.abs_floor + options.rel * std::abs(best.coincidence))
        return best;
    }
    prev = best.coincidence;
    if (n_radial >= options.max_radial && n_angular >= options.max_angular)
      break;
    n_radial = std::min(2 * n_radial, options.max_radial);
    n_angular = std::min(2 * n_angular, options.max_angular);
  }
  if (change > options.required_abs) {
    std::ostringstream os;
    os << "exact_click_probabilities: node doubling stalled at change "
       << change << " > " << options.required_abs << " (n_radial=" << n_radial
       << ", n_angular=" << n_angular << ")";
    throw std::runtime_error(os.str());
  }
  return best;
}

double exact_coincidence_probability(const ExperimentConfig& config,
                                     double delta_t,
                                     const QuadratureOptions& options) {
  return exact_click_probabilities(config, delta_t, options).coincidence;
}

}  // namespace speckledip
