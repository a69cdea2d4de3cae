#pragma once

#include "maneuver/io/config.hpp"
#include "maneuver/path/akima.hpp"
#include "maneuver/path/segmentation.hpp"
#include "maneuver/path/spline.hpp"

namespace maneuver {

// Stage results shared by the CLI and the test harnesses.

struct PlanArtifacts {
  WaypointSet waypoints;
  PathSpline spline;
  FitReport fit_report;
  CurvatureProfile curvature_forward;
  CurvatureProfile curvature_backward;
  SpeedProfile speed_forward;
  SpeedProfile speed_backward;
};

PlanArtifacts run_plan(const RunConfig& cfg);

struct DesignArtifacts {
  GainSchedule schedule_forward;
  GainSchedule schedule_backward;
  // One admissible map per schedule speed, forward direction, for export.
  std::vector<std::pair<double, AdmissibleMap>> maps_forward;
};

DesignArtifacts run_design(const RunConfig& cfg);

Scenario make_scenario(const RunConfig& cfg, const PlanArtifacts& plan,
                       const DesignArtifacts& design, ControllerKind kind,
                       Direction direction);

// Start pose of the course traversal: the forward run launches from the
// course origin, the backward run from the forward end with the heading
// flipped by pi.
Pose initial_pose(const RunConfig& cfg, Direction direction);

}  // namespace maneuver
