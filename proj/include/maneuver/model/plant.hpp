#pragma once

#include <Eigen/Dense>

#include "maneuver/control/rational_tf.hpp"
#include "maneuver/path/course.hpp"

namespace maneuver {

// Model scheduling floor: the lateral model divides by V and V^2.
constexpr double kModelSpeedFloor = 0.1;  // m/s

struct VehicleParams {
  double cornering_front = 3e5;   // N/rad
  double cornering_rear = 3e5;    // N/rad
  double dist_front = 2.0;        // m, CG to front axle
  double dist_rear = 2.0;         // m, CG to rear axle
  double mass = 3000.0;           // kg
  double yaw_inertia = 5.113e3;   // kg m^2

  void validate() const;
  // Backward driving as a rear-steer vehicle driving forward: front and
  // rear tire parameters interchange.
  VehicleParams swapped() const;
};

// Speed-scheduled linear path-tracking model, states (beta, r, dpsi, e_y).
struct PlantModel {
  Eigen::Matrix4d a;
  Eigen::Vector4d b_steer;       // active steering axle
  Eigen::Vector4d b_curvature;   // reference-curvature disturbance
  Eigen::Vector4d b_yaw_moment;  // yaw-moment disturbance
  double speed = 0.0;
  double preview = 0.0;
  Direction direction = Direction::forward;
};

PlantModel assemble_model(const VehicleParams& params, double speed,
                          double preview, Direction direction);

// Transfer function from the active steering angle to the path-tracking
// error e_y, via the Faddeev-LeVerrier resolvent recursion with diagonal
// balancing. Relative degree 2, double pole at s = 0.
RationalTF steering_to_error_tf(const PlantModel& plant);

}  // namespace maneuver
