#include "maneuver/path/akima.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maneuver {

MakimaInterpolant::MakimaInterpolant(std::vector<double> abscissae,
                                     std::vector<double> values)
    : t_(std::move(abscissae)), v_(std::move(values)) {
  const int n = static_cast<int>(t_.size());
  if (n < 3) throw std::invalid_argument("makima: need at least 3 knots");
  if (v_.size() != t_.size())
    throw std::invalid_argument("makima: knot/value size mismatch");
  for (int i = 1; i < n; ++i)
    if (!(t_[i] > t_[i - 1]))
      throw std::invalid_argument("makima: abscissae must strictly increase");

  // Secant slopes with two Akima ghost slopes appended at each end.
  std::vector<double> d(n + 3);
  for (int i = 0; i < n - 1; ++i)
    d[i + 2] = (v_[i + 1] - v_[i]) / (t_[i + 1] - t_[i]);
  d[1] = 2.0 * d[2] - d[3];
  d[0] = 2.0 * d[1] - d[2];
  d[n + 1] = 2.0 * d[n] - d[n - 1];
  d[n + 2] = 2.0 * d[n + 1] - d[n];

  slope_.resize(n);
  for (int i = 0; i < n; ++i) {
    // Modified weights: |delta difference| + |delta average|.
    const double w1 = std::abs(d[i + 3] - d[i + 2]) +
                      std::abs(d[i + 3] + d[i + 2]) / 2.0;
    const double w2 =
        std::abs(d[i + 1] - d[i]) + std::abs(d[i + 1] + d[i]) / 2.0;
    slope_[i] = (w1 + w2 == 0.0) ? 0.0
                                 : (w1 * d[i + 1] + w2 * d[i + 2]) / (w1 + w2);
  }
}

int MakimaInterpolant::interval(double t) const {
  const int n = static_cast<int>(t_.size());
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  int i = static_cast<int>(it - t_.begin()) - 1;
  return std::clamp(i, 0, n - 2);
}

double MakimaInterpolant::operator()(double t) const {
  const int i = interval(t);
  const double h = t_[i + 1] - t_[i];
  const double u = (t - t_[i]) / h;
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  return h00 * v_[i] + h10 * h * slope_[i] + h01 * v_[i + 1] +
         h11 * h * slope_[i + 1];
}

double MakimaInterpolant::derivative(double t) const {
  const int i = interval(t);
  const double h = t_[i + 1] - t_[i];
  const double u = (t - t_[i]) / h;
  const double u2 = u * u;
  const double h00 = (6 * u2 - 6 * u) / h;
  const double h10 = 3 * u2 - 4 * u + 1;
  const double h01 = (-6 * u2 + 6 * u) / h;
  const double h11 = 3 * u2 - 2 * u;
  return h00 * v_[i] + h10 * slope_[i] + h01 * v_[i + 1] + h11 * slope_[i + 1];
}

WaypointSet densify_waypoints(const std::vector<Eigen::Vector2d>& anchors,
                              int count) {
  const int n = static_cast<int>(anchors.size());
  if (n < 3) throw std::invalid_argument("densify: need at least 3 anchors");
  if (count < n)
    throw std::invalid_argument("densify: count must be >= anchor count");

  std::vector<double> t(n), xs(n), ys(n);
  t[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    xs[i] = anchors[i].x();
    ys[i] = anchors[i].y();
    if (i > 0) {
      const double chord = (anchors[i] - anchors[i - 1]).norm();
      if (chord == 0.0)
        throw std::invalid_argument("densify: duplicate consecutive anchor");
      t[i] = t[i - 1] + chord;
    }
  }

  MakimaInterpolant fx(t, xs), fy(t, ys);

  // Uniform parameter grid, then snap the nearest grid slot to each anchor
  // so every anchor shows up exactly.
  const double total = t.back();
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i)
    grid[i] = total * static_cast<double>(i) / (count - 1);
  int last_slot = -1;
  for (int a = 0; a < n; ++a) {
    int slot = static_cast<int>(std::lround(t[a] / total * (count - 1)));
    slot = std::clamp(slot, last_slot + 1, count - (n - a));
    grid[slot] = t[a];
    last_slot = slot;
  }

  WaypointSet out;
  out.points.reserve(count);
  for (int i = 0; i < count; ++i)
    out.points.emplace_back(fx(grid[i]), fy(grid[i]));
  return out;
}

std::pair<int, int> WaypointSet::segment_range(int segment) const {
  const int m = segment_count();
  if (segment < 0 || segment >= m)
    throw std::invalid_argument("segment index out of range");
  const int first = segment == 0 ? 0 : segment_boundaries[segment - 1];
  const int last = segment == m - 1 ? static_cast<int>(points.size())
                                    : segment_boundaries[segment];
  return {first, last};
}

}  // namespace maneuver
