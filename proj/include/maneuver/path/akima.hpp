#pragma once

#include <vector>

#include "maneuver/path/waypoints.hpp"

namespace maneuver {

// Shape-preserving piecewise-cubic Hermite interpolant with the modified
// Akima slope rule (locally weighted secant slopes; flat data stays flat).
class MakimaInterpolant {
 public:
  // Abscissae must be strictly increasing, size >= 3.
  MakimaInterpolant(std::vector<double> abscissae, std::vector<double> values);

  double operator()(double t) const;
  double derivative(double t) const;

  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }

 private:
  int interval(double t) const;

  std::vector<double> t_;
  std::vector<double> v_;
  std::vector<double> slope_;  // Hermite endpoint slopes, one per knot
};

// Spans `count` points along the modified-Akima interpolant through the
// anchors (chord-length parametrization). All anchors appear verbatim in
// the output; the rest of the samples are uniform in the chord parameter.
WaypointSet densify_waypoints(const std::vector<Eigen::Vector2d>& anchors,
                              int count);

}  // namespace maneuver
