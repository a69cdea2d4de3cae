#include "maneuver/speed/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maneuver {

namespace {
constexpr double kSampleSpacing = 0.01;  // m
}

void SpeedLimits::validate() const {
  if (!(lat_accel_max > 0 && long_accel_max > 0 && speed_max > 0 &&
        speed_min > 0 && preview_gain > 0))
    throw std::invalid_argument("speed limits must be strictly positive");
  if (!(speed_min < speed_max))
    throw std::invalid_argument("speed_min must be below speed_max");
}

double preview_distance(double speed, double gain) {
  if (speed < 0.0) throw std::invalid_argument("preview: negative speed");
  return gain * speed;
}

SpeedProfile build_profile(const CurvatureProfile& curv,
                           const SpeedLimits& limits) {
  limits.validate();
  if (curv.samples.empty())
    throw std::invalid_argument("speed profile: empty curvature profile");

  const double length = curv.total_length;
  const int n = std::max(2, static_cast<int>(std::ceil(length / kSampleSpacing)) + 1);

  SpeedProfile prof;
  prof.direction = curv.direction;
  prof.samples.resize(n);

  // Pointwise curvature cap, clipped to the speed ceiling, squared.
  std::vector<double> v2(n);
  for (int i = 0; i < n; ++i) {
    const double s = length * i / (n - 1);
    const double kappa = std::abs(curv.kappa_at(s));
    double cap = limits.speed_max;
    if (kappa > 0.0)
      cap = std::min(cap, std::sqrt(limits.lat_accel_max / kappa));
    v2[i] = cap * cap;
    prof.samples[i].s = s;
  }

  // |V dV/ds| <= a_long is linear in V^2: forward then backward pass, with
  // standstill pinned at both ends.
  const double ds = length / (n - 1);
  v2[0] = 0.0;
  for (int i = 1; i < n; ++i)
    v2[i] = std::min(v2[i], v2[i - 1] + 2.0 * limits.long_accel_max * ds);
  v2[n - 1] = 0.0;
  for (int i = n - 2; i >= 0; --i)
    v2[i] = std::min(v2[i], v2[i + 1] + 2.0 * limits.long_accel_max * ds);

  double peak = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = std::sqrt(std::max(0.0, v2[i]));
    peak = std::max(peak, v);
    prof.samples[i].speed = v;
    prof.samples[i].preview = preview_distance(v, limits.preview_gain);
  }
  prof.plateau_reached = peak >= limits.speed_min;
  return prof;
}

double SpeedProfile::speed_at(double s) const {
  if (samples.empty()) return 0.0;
  if (s <= samples.front().s) return samples.front().speed;
  if (s >= samples.back().s) return samples.back().speed;
  auto it = std::lower_bound(
      samples.begin(), samples.end(), s,
      [](const Sample& a, double val) { return a.s < val; });
  const Sample& hi = *it;
  const Sample& lo = *(it - 1);
  const double w = (s - lo.s) / (hi.s - lo.s);
  return lo.speed + w * (hi.speed - lo.speed);
}

}  // namespace maneuver
