#pragma once

#include <string>

#include "maneuver/control/dstability.hpp"
#include "maneuver/path/spline.hpp"
#include "maneuver/sim/engine.hpp"
#include "maneuver/speed/profile.hpp"

namespace maneuver {

// CSV / JSON / Markdown emitters. All floating-point output goes through
// the same %.12g formatting so repeated runs are byte-identical.

std::string format_double(double v);

void write_spline_csv(const PathSpline& spline, const std::string& path);
void write_curvature_csv(const CurvatureProfile& prof,
                         const std::string& path);
void write_speed_csv(const SpeedProfile& prof, const std::string& path);
void write_admissible_csv(const AdmissibleMap& map, const std::string& path);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);
void write_metrics_json(
    const std::vector<std::pair<std::string, Metrics>>& entries,
    const std::string& path);
void write_comparison_markdown(const ComparisonReport& report,
                               const std::string& path);

void write_schedule_json(const GainSchedule& schedule,
                         const DobSettings& dob, const std::string& path);
std::pair<GainSchedule, DobSettings> load_schedule_json(
    const std::string& path);

CurvatureProfile load_curvature_csv(const std::string& path,
                                    Direction direction);
SpeedProfile load_speed_csv(const std::string& path, Direction direction);

}  // namespace maneuver
