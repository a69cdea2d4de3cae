#pragma once

#include <vector>

#include "maneuver/path/spline.hpp"

namespace maneuver {

struct SpeedLimits {
  double lat_accel_max = 0.4905;   // m/s^2 (0.05 g)
  double long_accel_max = 0.4905;  // m/s^2 (0.05 g)
  double speed_max = 1.0;          // m/s
  double speed_min = 0.1;          // m/s, model-scheduling floor
  double preview_gain = 0.5;       // s, preview = gain * speed

  void validate() const;
};

// Arc-length-indexed speed and preview-distance schedule. Speed ramps from
// and to standstill; the interior plateau is capped by the curvature and
// speed limits.
struct SpeedProfile {
  struct Sample {
    double s;
    double speed;
    double preview;
  };
  std::vector<Sample> samples;
  Direction direction = Direction::forward;
  // False when the path is too short to reach speed_min (triangular ramp).
  bool plateau_reached = true;

  double speed_at(double s) const;  // linear interpolation, clamped
};

double preview_distance(double speed, double gain);

// Curvature cap sqrt(lat_max/|kappa|) plus a forward/backward pass on V^2
// enforcing the longitudinal limit, sampled every 0.01 m.
SpeedProfile build_profile(const CurvatureProfile& curv,
                           const SpeedLimits& limits);

}  // namespace maneuver
