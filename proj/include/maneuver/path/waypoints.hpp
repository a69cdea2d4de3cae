#pragma once

#include <Eigen/Dense>
#include <vector>

namespace maneuver {

// Ordered planar waypoints plus an optional partition into contiguous
// segments. segment_boundaries holds the start index of segments 2..m,
// strictly increasing; empty means a single segment.
struct WaypointSet {
  std::vector<Eigen::Vector2d> points;
  std::vector<int> segment_boundaries;

  int segment_count() const {
    return static_cast<int>(segment_boundaries.size()) + 1;
  }
  // Half-open [first, last) index range of a 0-based segment.
  std::pair<int, int> segment_range(int segment) const;
};

}  // namespace maneuver
