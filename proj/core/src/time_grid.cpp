#include "speckledip/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace speckledip {

TimeGrid::TimeGrid(double t_min, double t_max, int n_points)
    : t_min_(t_min), t_max_(t_max), n_points_(n_points) {
  if (!(t_max > t_min))
    throw std::invalid_argument("TimeGrid: t_max must exceed t_min");
  if (n_points < 2)
    throw std::invalid_argument("TimeGrid: need at least 2 points");
  spacing_ = (t_max - t_min) / (n_points - 1);
}

TimeGrid TimeGrid::pulse_support(double tau_p, double delta_t,
                                 int min_points) {
  if (!(tau_p > 0.0))
    throw std::invalid_argument("TimeGrid: tau_p must be positive");
  const double half_span = std::abs(delta_t) / 2.0 + 8.0 * tau_p;
  // Keep the spacing at least a factor 2 inside the tau_p/16 guard.
  const double needed = std::ceil(64.0 * (2.0 * half_span) / tau_p) + 1.0;
  const int n = std::max(min_points, static_cast<int>(needed));
  return TimeGrid(-half_span, half_span, n);
}

bool TimeGrid::covers(double tau_p, double delta_t) const {
  const double half_span = std::abs(delta_t) / 2.0 + 8.0 * tau_p;
  return t_min_ <= -half_span && t_max_ >= half_span;
}

}  // namespace speckledip
