#pragma once

#include "maneuver/path/waypoints.hpp"

namespace maneuver {

// Partitions the waypoints into m contiguous segments so that each segment
// contains at most one turning maneuver. Boundaries land on the waypoints
// nearest the heading-rate transitions (turn entry/exit and sign changes),
// ties toward the lower index. min_segment_points is the over-determination
// floor for the downstream fit (pass p+1).
WaypointSet segment_waypoints(const WaypointSet& wps, int m,
                              int min_segment_points);

// Finite-difference heading rate per waypoint (size points-2), used by the
// segmentation and handy as a test oracle.
std::vector<double> heading_rate(const std::vector<Eigen::Vector2d>& points);

}  // namespace maneuver
