#include "maneuver/path/course.hpp"

#include <cmath>
#include <stdexcept>

namespace maneuver {

void CourseGeometry::validate() const {
  if (pylon_positions.empty())
    throw std::invalid_argument("course: pylon list must be non-empty");
  if (!(end_pose.x > start_pose.x))
    throw std::invalid_argument("course: end must lie ahead of start");
  if (!(transition_start > start_pose.x && transition_end < end_pose.x &&
        transition_end > transition_start))
    throw std::invalid_argument("course: bad transition window");
}

CourseGeometry default_course(LaneChangeSide side) {
  CourseGeometry c;
  c.side = side;
  // Pylon box 9 ft wide (half width 1.3716 m), point pylon straight ahead.
  const double hw = 1.3716;
  c.pylon_positions = {{0.0, -hw}, {0.0, hw},  {6.096, -hw},
                       {6.096, hw}, {12.192, 0.0}};
  if (side == LaneChangeSide::right) {
    c.end_pose.y = -c.end_pose.y;
    for (auto& p : c.pylon_positions) p.y() = -p.y();
  }
  return c;
}

std::vector<Eigen::Vector2d> course_anchors(const CourseGeometry& course) {
  course.validate();
  const double offset = course.end_pose.y - course.start_pose.y;
  const double x0 = course.transition_start;
  const double len = course.transition_end - course.transition_start;

  auto y_at = [&](double x) {
    if (x <= x0) return course.start_pose.y;
    if (x >= x0 + len) return course.end_pose.y;
    const double u = (x - x0) / len;
    // Quintic ease: zero first and second derivatives at both ends.
    const double ease = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
    return course.start_pose.y + offset * ease;
  };

  std::vector<Eigen::Vector2d> anchors;
  auto push = [&](double x) { anchors.emplace_back(x, y_at(x)); };
  push(course.start_pose.x);
  push(0.5 * (course.start_pose.x + x0));
  push(x0);
  const int kTransitionAnchors = 9;
  for (int i = 1; i <= kTransitionAnchors; ++i)
    push(x0 + len * i / (kTransitionAnchors + 1.0));
  push(x0 + len);
  push(0.5 * (x0 + len + course.end_pose.x));
  push(course.end_pose.x);
  return anchors;
}

}  // namespace maneuver
