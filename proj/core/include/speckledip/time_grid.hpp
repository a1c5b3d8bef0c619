#pragma once

namespace speckledip {

/// Uniform time grid used for trapezoid quadrature of pulse-shaped
/// integrands. The coincidence gate itself is never discretized: the
/// envelope is negligible a few tau_p outside the pulse, so a grid that
/// covers [-( |delta_t|/2 + 8 tau_p ), +( |delta_t|/2 + 8 tau_p )]
/// integrates the whole gated energy.
class TimeGrid {
 public:
  static constexpr int kDefaultPoints = 4096;

  /// Throws std::invalid_argument unless t_max > t_min and n_points >= 2.
  TimeGrid(double t_min, double t_max, int n_points);

  /// Grid spanning the pulse support for the given delay. n_points grows
  /// beyond the default when |delta_t| is so large that the default would
  /// violate the spacing <= tau_p/16 quadrature guard; the grid is meant
  /// to be rebuilt per delay, never shared across a sweep.
  static TimeGrid pulse_support(double tau_p, double delta_t,
                                int min_points = kDefaultPoints);

  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  int n_points() const { return n_points_; }
  double spacing() const { return spacing_; }
  double point(int i) const { return t_min_ + spacing_ * i; }

  /// True when the pulse support for (tau_p, delta_t) lies inside the grid.
  bool covers(double tau_p, double delta_t) const;

 private:
  double t_min_;
  double t_max_;
  int n_points_;
  double spacing_;
};

}  // namespace speckledip
