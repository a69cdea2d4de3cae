#pragma once

#include <Eigen/Dense>
#include <vector>

namespace maneuver {

enum class Direction { forward, backward };
enum class LaneChangeSide { left, right };

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

// S-shaped maneuverability course: straight launch out of the pylon box, a
// single lane change past the point pylon, straight run-out. The default
// dimensions put the end pose at (15.2386, 1.3716) with heading 0.
struct CourseGeometry {
  Pose start_pose{0.0, 0.0, 0.0};
  Pose end_pose{15.2386, 1.3716, 0.0};
  std::vector<Eigen::Vector2d> pylon_positions;
  LaneChangeSide side = LaneChangeSide::left;

  // Longitudinal window of the lane-change transition: from the front of the
  // pylon box to the point pylon the vehicle must clear sideways.
  double transition_start = 6.096;
  double transition_end = 12.192;

  void validate() const;
};

CourseGeometry default_course(LaneChangeSide side = LaneChangeSide::left);

// Anchor waypoints tracing the course: straights sampled sparsely, the
// lane change as a quintic ease (zero slope and curvature at both ends).
std::vector<Eigen::Vector2d> course_anchors(const CourseGeometry& course);

}  // namespace maneuver
