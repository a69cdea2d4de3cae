#pragma once

#include <string>
#include <vector>

#include "maneuver/control/dstability.hpp"
#include "maneuver/model/plant.hpp"
#include "maneuver/speed/profile.hpp"

namespace maneuver {

enum class ControllerKind { dob, pid, pid_dob };

std::string to_string(ControllerKind kind);
ControllerKind controller_from_string(const std::string& name);

struct NoiseSpec {
  double stddev = 0.0;  // m, added to the measured e_y
  std::uint64_t seed = 0;
};

struct Scenario {
  VehicleParams vehicle;
  CurvatureProfile curvature;  // direction-matched
  SpeedProfile speed;
  ControllerKind controller = ControllerKind::pid_dob;
  GainSchedule schedule;  // required for pid / pid_dob
  DobSettings dob;
  Pose initial_pose;
  double initial_lateral_error = 0.0;  // m, injected into e_y at t = 0
  Direction direction = Direction::forward;
  double dt = 0.001;           // s
  double preview_gain = 0.5;   // s
  double steering_limit = 0.6; // rad
  NoiseSpec noise;
};

struct Trajectory {
  struct Row {
    double t, s, beta, yaw_rate, heading_error, lateral_error;
    double steering, steering_rate, speed, kappa;
    double x, y, psi;  // reconstructed global pose (not fed back)
  };
  std::vector<Row> rows;
};

struct Metrics {
  double max_abs_lateral_error = 0.0;  // m
  double rms_lateral_error = 0.0;      // m
  double max_abs_steering = 0.0;       // rad
  double max_abs_steering_rate = 0.0;  // rad/s
};

// Fixed-step RK4 on the path-tracking error dynamics with the reference
// curvature injected as arc length advances. The discrete controller runs
// once per step; steering is saturated at +-steering_limit.
Trajectory simulate(const Scenario& scenario);

Metrics compute_metrics(const Trajectory& traj);

struct ComparisonEntry {
  ControllerKind controller;
  Metrics metrics;
};

struct ComparisonReport {
  std::vector<ComparisonEntry> entries;
  // max-error ratio of each standalone controller against pid_dob (when
  // present); empty otherwise.
  std::vector<double> max_error_ratios_vs_combined;
  bool combined_dominates = false;
};

// Runs scenarios that differ only in controller kind and tabulates the
// metrics side by side.
ComparisonReport compare(const std::vector<Scenario>& scenarios);

}  // namespace maneuver
