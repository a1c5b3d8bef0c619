#pragma once

#include <complex>

#include "speckledip/pulse.hpp"
#include "speckledip/speckle.hpp"
#include "speckledip/time_grid.hpp"

namespace speckledip {

/// Baseband fields entering the recombining beamsplitter. The optical
/// carrier exp(-i w0 t) is dropped throughout: it cancels in every
/// intensity and hence in every count statistic.
struct ArmFields {
  std::complex<double> plus;
  std::complex<double> minus;
};

struct PortIntensities {
  double port1;  // photons/s at detector 1
  double port2;  // photons/s at detector 2
};

struct GatedEnergies {
  double port1;  // photons reaching detector 1 within the gate
  double port2;
};

/// E+-(t) = v+- f(t +- delta_t/2).
ArmFields arm_fields(const PulseEnvelope& env, const SpeckleDraw& draw,
                     double delta_t, double t);

/// Output intensities |E1|^2, |E2|^2 with E1 = (E+ + E-)/sqrt(2) and
/// E2 = (E+ - E-)/sqrt(2). The fringe cross terms at the two ports are
/// equal and opposite, so port1 + port2 = |E+|^2 + |E-|^2 identically.
PortIntensities output_intensities(const PulseEnvelope& env,
                                   const SpeckleDraw& draw, double delta_t,
                                   double t);

/// Trapezoid moments of the envelope pair on a grid. The gated energies
/// are linear in (|v+|^2, |v-|^2, Re[v+* v-]):
///   W1 = (|v+|^2 A+ + |v-|^2 A-)/2 + Re[v+* v-] C
///   W2 = (|v+|^2 A+ + |v-|^2 A-)/2 - Re[v+* v-] C
/// with A+- the arm norms and C the envelope overlap, so the quadrature
/// runs once per delay instead of once per speckle draw.
class GatedKernel {
 public:
  /// Throws std::invalid_argument when the grid does not cover the pulse
  /// support or is too coarse (spacing > tau_p/16).
  GatedKernel(const PulseEnvelope& env, double delta_t, const TimeGrid& grid);

  GatedEnergies energies(const SpeckleDraw& draw) const;

  double norm_plus() const { return norm_plus_; }    // integral of f(t+dt/2)^2
  double norm_minus() const { return norm_minus_; }  // integral of f(t-dt/2)^2
  double overlap() const { return overlap_; }        // integral of f(t+dt/2) f(t-dt/2)
  double delta_t() const { return delta_t_; }

 private:
  double norm_plus_;
  double norm_minus_;
  double overlap_;
  double delta_t_;
};

/// Gated pulse energies at the two ports for one speckle draw, by
/// trapezoid quadrature of output_intensities over the grid. The gate is
/// assumed to contain the whole pulse support (it is validated positive
/// but the envelope tails carry the integral, not the gate edges).
GatedEnergies gated_energies(const PulseEnvelope& env, const SpeckleDraw& draw,
                             double delta_t, double gate,
                             const TimeGrid& grid);

/// Transverse coherence length lambda * d / D of the diffused field at
/// distance d from a diffuser of illuminated diameter D. Throws
/// std::domain_error for nonpositive input.
double coherence_length(double wavelength, double source_distance,
                        double source_diameter);

}  // namespace speckledip
