#include "maneuver/path/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maneuver {

std::vector<double> heading_rate(const std::vector<Eigen::Vector2d>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) return {};
  std::vector<double> heading(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    const Eigen::Vector2d d = points[i + 1] - points[i];
    heading[i] = std::atan2(d.y(), d.x());
  }
  // Unwrap, then first difference.
  for (int i = 1; i < n - 1; ++i) {
    double jump = heading[i] - heading[i - 1];
    while (jump > std::numbers::pi) jump -= 2 * std::numbers::pi;
    while (jump < -std::numbers::pi) jump += 2 * std::numbers::pi;
    heading[i] = heading[i - 1] + jump;
  }
  // Normalize by arc spacing so uneven waypoint spacing does not show up
  // as heading-rate noise.
  std::vector<double> rate(n - 2);
  for (int i = 0; i < n - 2; ++i) {
    const double ds = 0.5 * ((points[i + 1] - points[i]).norm() +
                             (points[i + 2] - points[i + 1]).norm());
    rate[i] = (heading[i + 1] - heading[i]) / ds;
  }
  return rate;
}

namespace {

struct Candidate {
  int index;       // waypoint index of the proposed boundary
  bool turn_turn;  // separates two opposite-sign turn regions
  int score;       // size of the smaller adjacent region
};

std::vector<double> smooth(const std::vector<double>& v, int half) {
  const int n = static_cast<int>(v.size());
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    int cnt = 0;
    for (int j = std::max(0, i - half); j <= std::min(n - 1, i + half); ++j) {
      acc += v[j];
      ++cnt;
    }
    out[i] = acc / cnt;
  }
  return out;
}

}  // namespace

WaypointSet segment_waypoints(const WaypointSet& wps, int m,
                              int min_segment_points) {
  const int n = static_cast<int>(wps.points.size());
  if (m < 1) throw std::invalid_argument("segmentation: m must be >= 1");
  if (min_segment_points < 2)
    throw std::invalid_argument("segmentation: need >= 2 points per segment");
  if (m > n / min_segment_points)
    throw std::invalid_argument(
        "segmentation: too many segments for the waypoint count");

  WaypointSet out;
  out.points = wps.points;
  if (m == 1) return out;

  const std::vector<double> raw = heading_rate(wps.points);
  const std::vector<double> rate = smooth(raw, std::max(2, n / 40));
  double peak = 0.0;
  for (double r : rate) peak = std::max(peak, std::abs(r));
  const double tau = 0.1 * peak;

  // Classify waypoints into straight (0) / left turn (+1) / right turn (-1)
  // runs; boundary candidates sit at the run transitions.
  std::vector<int> cls(n, 0);
  for (int i = 0; i < static_cast<int>(rate.size()); ++i)
    cls[i + 1] = std::abs(rate[i]) > tau ? (rate[i] > 0 ? 1 : -1) : 0;
  cls[0] = cls[1];
  cls[n - 1] = cls[n - 2];

  struct Run {
    int begin, end, sign;
  };
  std::vector<Run> runs;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && cls[j] == cls[i]) ++j;
    runs.push_back({i, j, cls[i]});
    i = j;
  }

  std::vector<Candidate> cands;
  for (size_t r = 1; r < runs.size(); ++r) {
    const Run& a = runs[r - 1];
    const Run& b = runs[r];
    const int len_a = a.end - a.begin;
    const int len_b = b.end - b.begin;
    cands.push_back({b.begin, a.sign != 0 && b.sign != 0 && a.sign != b.sign,
                     std::min(len_a, len_b)});
  }
  // A short straight gap sandwiched between opposite turns still separates
  // the turns; promote its entry transition.
  for (size_t r = 1; r + 1 < runs.size(); ++r) {
    const Run& gap = runs[r];
    if (gap.sign == 0 && runs[r - 1].sign != 0 &&
        runs[r + 1].sign == -runs[r - 1].sign &&
        gap.end - gap.begin < n / 10) {
      cands[r - 1].turn_turn = true;
      cands[r - 1].index = (gap.begin + gap.end) / 2;
    }
  }

  // Keep turn-to-turn separators first so no segment ends up with two
  // maneuvers, then the widest straight/turn transitions.
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.turn_turn != b.turn_turn) return a.turn_turn;
                     if (a.score != b.score) return a.score > b.score;
                     return a.index < b.index;
                   });
  std::vector<int> boundaries;
  for (const Candidate& c : cands) {
    if (static_cast<int>(boundaries.size()) == m - 1) break;
    boundaries.push_back(c.index);
  }
  std::sort(boundaries.begin(), boundaries.end());

  // Top up by bisecting the largest remaining segment.
  while (static_cast<int>(boundaries.size()) < m - 1) {
    std::vector<int> edges{0};
    edges.insert(edges.end(), boundaries.begin(), boundaries.end());
    edges.push_back(n);
    int best = 0, best_len = -1;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
      if (edges[i + 1] - edges[i] > best_len) {
        best_len = edges[i + 1] - edges[i];
        best = static_cast<int>(i);
      }
    boundaries.push_back(edges[best] + best_len / 2);
    std::sort(boundaries.begin(), boundaries.end());
  }

  // Enforce the per-segment point floor by shifting boundaries inward.
  for (int i = 0; i < m - 1; ++i) {
    const int lo = (i + 1) * min_segment_points;
    boundaries[i] = std::max(boundaries[i], lo);
  }
  for (int i = m - 2; i >= 0; --i) {
    const int hi = n - (m - 1 - i) * min_segment_points;
    boundaries[i] = std::min(boundaries[i], hi);
  }
  for (int i = 1; i < m - 1; ++i)
    if (boundaries[i] - boundaries[i - 1] < min_segment_points)
      throw std::invalid_argument(
          "segmentation: cannot honor per-segment point floor");

  out.segment_boundaries = boundaries;
  return out;
}

}  // namespace maneuver
