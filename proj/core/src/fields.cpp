#include "speckledip/fields.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace speckledip {

ArmFields arm_fields(const PulseEnvelope& env, const SpeckleDraw& draw,
                     double delta_t, double t) {
  return {draw.v_plus * env.value(t + delta_t / 2.0),
          draw.v_minus * env.value(t - delta_t / 2.0)};
}

PortIntensities output_intensities(const PulseEnvelope& env,
                                   const SpeckleDraw& draw, double delta_t,
                                   double t) {
  const ArmFields e = arm_fields(env, draw, delta_t, t);
  const std::complex<double> e1 = (e.plus + e.minus) / std::sqrt(2.0);
  const std::complex<double> e2 = (e.plus - e.minus) / std::sqrt(2.0);
  return {std::norm(e1), std::norm(e2)};
}

namespace {

void check_grid(const PulseEnvelope& env, double delta_t,
                const TimeGrid& grid) {
  if (!grid.covers(env.tau_p(), delta_t)) {
    std::ostringstream os;
    os << "grid [" << grid.t_min() << ", " << grid.t_max()
       << "] does not cover the pulse support for tau_p = " << env.tau_p()
       << ", delta_t = " << delta_t;
    throw std::invalid_argument(os.str());
  }
  const double limit = env.tau_p() / 16.0;
  if (grid.spacing() > limit) {
    std::ostringstream os;
    os << "grid spacing " << grid.spacing() << " exceeds tau_p/16 = " << limit
       << "; refusing inaccurate quadrature (increase n_points)";
    throw std::invalid_argument(os.str());
  }
}

// Trapezoid weight: half at the ends, unit inside.
inline double trapezoid_weight(int i, int n) {
  return (i == 0 || i == n - 1) ? 0.5 : 1.0;
}

}  // namespace

GatedKernel::GatedKernel(const PulseEnvelope& env, double delta_t,
                         const TimeGrid& grid)
    : delta_t_(delta_t) {
  check_grid(env, delta_t, grid);
  double a_plus = 0.0, a_minus = 0.0, cross = 0.0;
  const int n = grid.n_points();
  for (int i = 0; i < n; ++i) {
    const double t = grid.point(i);
    const double fp = env.value(t + delta_t / 2.0);
    const double fm = env.value(t - delta_t / 2.0);
    const double w = trapezoid_weight(i, n);
    a_plus += w * fp * fp;
    a_minus += w * fm * fm;
    cross += w * fp * fm;
  }
  const double h = grid.spacing();
  norm_plus_ = a_plus * h;
  norm_minus_ = a_minus * h;
  overlap_ = cross * h;
}

GatedEnergies GatedKernel::energies(const SpeckleDraw& draw) const {
  const double p = std::norm(draw.v_plus);
  const double m = std::norm(draw.v_minus);
  const double re_cross =
      draw.v_plus.real() * draw.v_minus.real() +
      draw.v_plus.imag() * draw.v_minus.imag();  // Re[v+* v-]
  const double common = 0.5 * (p * norm_plus_ + m * norm_minus_);
  const double fringe = re_cross * overlap_;
  return {common + fringe, common - fringe};
}

GatedEnergies gated_energies(const PulseEnvelope& env, const SpeckleDraw& draw,
                             double delta_t, double gate,
                             const TimeGrid& grid) {
  if (!(gate > 0.0))
    throw std::invalid_argument("gated_energies: gate must be positive");
  return GatedKernel(env, delta_t, grid).energies(draw);
}

double coherence_length(double wavelength, double source_distance,
                        double source_diameter) {
  if (!(wavelength > 0.0) || !(source_distance > 0.0) ||
      !(source_diameter > 0.0))
    throw std::domain_error("coherence_length: inputs must be positive");
  return wavelength * source_distance / source_diameter;
}

}  // namespace speckledip
