#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "maneuver/control/dstability.hpp"
#include "maneuver/path/course.hpp"
#include "maneuver/sim/engine.hpp"
#include "maneuver/speed/profile.hpp"

namespace maneuver {

struct FitSettings {
  int segments = 4;       // m
  int order = 6;          // p
  int continuity = 3;     // q
  int densify_count = 200;

  void validate() const;
};

struct SimSettings {
  // Explicit RK4 must resolve the fast chassis poles, which reach ~4.7e3
  // rad/s at the 0.1 m/s scheduling floor; 2e-4 s keeps |lambda|*dt well
  // inside the stability region with headroom for step-halving checks.
  double dt = 2e-4;
  double steering_limit = 0.6;
  double noise_stddev = 0.0;
  std::uint64_t noise_seed = 0;
  int curvature_samples = 2000;

  void validate() const;
};

// Everything one pipeline run needs. Defaults reproduce the published
// course, limits and vehicle ("paper" preset).
struct RunConfig {
  CourseGeometry course;
  std::vector<Eigen::Vector2d> anchors;  // empty -> derived from course
  FitSettings fit;
  SpeedLimits speed_limits;
  VehicleParams vehicle;
  DobSettings dob;
  DRegion d_region;
  GainGrid gain_grid;
  std::vector<double> schedule_speeds = {0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 1.0};
  SimSettings sim;
  std::vector<ControllerKind> controllers = {
      ControllerKind::dob, ControllerKind::pid, ControllerKind::pid_dob};

  void validate() const;
  std::vector<Eigen::Vector2d> effective_anchors() const;
};

// Named presets; "paper" is the full default configuration, the
// "paper-table-N" names patch in just that table's values.
nlohmann::json preset_json(const std::string& name);

// Parses a config document. Unknown keys anywhere are an error. The
// optional "preset" key names a base the remaining keys override.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path);
RunConfig config_from_preset(const std::string& name);

}  // namespace maneuver
