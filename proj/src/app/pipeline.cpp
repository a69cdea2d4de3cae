#include "maneuver/app/pipeline.hpp"

#include <numbers>

namespace maneuver {

PlanArtifacts run_plan(const RunConfig& cfg) {
  cfg.validate();
  PlanArtifacts plan;
  const auto anchors = cfg.effective_anchors();
  WaypointSet dense = densify_waypoints(anchors, cfg.fit.densify_count);
  plan.waypoints =
      segment_waypoints(dense, cfg.fit.segments, cfg.fit.order + 1);
  plan.spline = fit_path(plan.waypoints, cfg.fit.order, cfg.fit.continuity,
                         &plan.fit_report);
  plan.curvature_forward =
      curvature_profile(plan.spline, cfg.sim.curvature_samples);
  plan.curvature_backward = reverse_profile(plan.curvature_forward);
  plan.speed_forward = build_profile(plan.curvature_forward, cfg.speed_limits);
  plan.speed_backward =
      build_profile(plan.curvature_backward, cfg.speed_limits);
  return plan;
}

DesignArtifacts run_design(const RunConfig& cfg) {
  cfg.validate();
  DesignArtifacts design;
  design.schedule_forward = build_schedule(
      cfg.vehicle, Direction::forward, cfg.schedule_speeds, cfg.d_region,
      cfg.dob, cfg.speed_limits.preview_gain, cfg.gain_grid);
  design.schedule_backward = build_schedule(
      cfg.vehicle, Direction::backward, cfg.schedule_speeds, cfg.d_region,
      cfg.dob, cfg.speed_limits.preview_gain, cfg.gain_grid);
  for (double v : cfg.schedule_speeds) {
    const PlantModel plant =
        assemble_model(cfg.vehicle, v, cfg.speed_limits.preview_gain * v,
                       Direction::forward);
    const RationalTF g_n = make_nominal(steering_to_error_tf(plant));
    const double ki = design.schedule_forward.at(v).ki;
    design.maps_forward.emplace_back(
        v, admissible_gain_map(g_n, cfg.d_region, ki, cfg.gain_grid));
  }
  return design;
}

Pose initial_pose(const RunConfig& cfg, Direction direction) {
  if (direction == Direction::forward) return cfg.course.start_pose;
  Pose pose = cfg.course.end_pose;
  pose.heading += std::numbers::pi;
  return pose;
}

Scenario make_scenario(const RunConfig& cfg, const PlanArtifacts& plan,
                       const DesignArtifacts& design, ControllerKind kind,
                       Direction direction) {
  Scenario sc;
  sc.vehicle = cfg.vehicle;
  sc.curvature = direction == Direction::forward ? plan.curvature_forward
                                                 : plan.curvature_backward;
  sc.speed = direction == Direction::forward ? plan.speed_forward
                                             : plan.speed_backward;
  sc.controller = kind;
  sc.schedule = direction == Direction::forward ? design.schedule_forward
                                                : design.schedule_backward;
  sc.dob = cfg.dob;
  sc.initial_pose = initial_pose(cfg, direction);
  sc.direction = direction;
  sc.dt = cfg.sim.dt;
  sc.preview_gain = cfg.speed_limits.preview_gain;
  sc.steering_limit = cfg.sim.steering_limit;
  sc.noise.stddev = cfg.sim.noise_stddev;
  sc.noise.seed = cfg.sim.noise_seed;
  return sc;
}

}  // namespace maneuver
