// Batch front-end: plan the maneuver path, design the controllers, run the
// closed-loop simulations and emit CSV/JSON/Markdown reports.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>

#include "maneuver/app/pipeline.hpp"
#include "maneuver/errors.hpp"
#include "maneuver/io/artifacts.hpp"

namespace fs = std::filesystem;
using namespace maneuver;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitNoGains = 4;

struct CommonOpts {
  std::string config_path;
  std::string preset = "paper";
  std::string out_dir = "out";
  std::vector<std::string> controllers;
  std::string direction = "both";
  bool reuse_artifacts = false;
};

RunConfig load(const CommonOpts& opts) {
  RunConfig cfg = opts.config_path.empty()
                      ? config_from_preset(opts.preset)
                      : load_config_file(opts.config_path);
  if (!opts.controllers.empty()) {
    cfg.controllers.clear();
    for (const auto& name : opts.controllers)
      cfg.controllers.push_back(controller_from_string(name));
  }
  return cfg;
}

std::vector<Direction> directions(const std::string& opt) {
  if (opt == "forward") return {Direction::forward};
  if (opt == "backward") return {Direction::backward};
  if (opt == "both") return {Direction::forward, Direction::backward};
  throw std::invalid_argument("--direction must be forward, backward or both");
}

const char* dir_tag(Direction d) {
  return d == Direction::forward ? "forward" : "backward";
}

void write_plan(const RunConfig& cfg, const PlanArtifacts& plan,
                const fs::path& out) {
  write_spline_csv(plan.spline, (out / "spline.csv").string());
  write_curvature_csv(plan.curvature_forward,
                      (out / "curvature_forward.csv").string());
  write_curvature_csv(plan.curvature_backward,
                      (out / "curvature_backward.csv").string());
  write_speed_csv(plan.speed_forward, (out / "speed_forward.csv").string());
  write_speed_csv(plan.speed_backward, (out / "speed_backward.csv").string());

  // Fit report: objective, constraint residual, joint continuity table.
  nlohmann::json rep;
  rep["objective_x"] = plan.fit_report.objective_x;
  rep["objective_y"] = plan.fit_report.objective_y;
  rep["constraint_residual_inf"] = plan.fit_report.constraint_residual_inf;
  rep["kkt_condition"] = plan.fit_report.kkt_condition;
  rep["used_nullspace_fallback"] = plan.fit_report.used_nullspace_fallback;
  rep["joint_continuity"] = nlohmann::json::array();
  for (int joint = 0; joint + 1 < plan.spline.segments; ++joint) {
    nlohmann::json row;
    row["joint"] = joint;
    for (int order = 0; order <= cfg.fit.continuity; ++order) {
      const Eigen::Vector2d lhs =
          eval_path(plan.spline, joint, 1.0, order);
      const Eigen::Vector2d rhs =
          eval_path(plan.spline, joint + 1, 0.0, order);
      row["mismatch_order_" + std::to_string(order)] =
          (lhs - rhs).cwiseAbs().maxCoeff();
    }
    rep["joint_continuity"].push_back(row);
  }
  std::ofstream(out / "fit_report.json") << rep.dump(2) << '\n';
}

void write_design(const DesignArtifacts& design, const DobSettings& dob,
                  const fs::path& out) {
  write_schedule_json(design.schedule_forward, dob,
                      (out / "schedule_forward.json").string());
  write_schedule_json(design.schedule_backward, dob,
                      (out / "schedule_backward.json").string());
  for (const auto& [v, map] : design.maps_forward) {
    char name[64];
    std::snprintf(name, sizeof(name), "admissible_v%.2f.csv", v);
    write_admissible_csv(map, (out / name).string());
  }
}

int cmd_simulate(const RunConfig& cfg, const CommonOpts& opts) {
  const fs::path out(opts.out_dir);
  fs::create_directories(out);

  PlanArtifacts plan;
  DesignArtifacts design;
  if (opts.reuse_artifacts) {
    // Fail before writing anything if the upstream stages are missing.
    for (const char* f :
         {"curvature_forward.csv", "curvature_backward.csv",
          "speed_forward.csv", "speed_backward.csv", "schedule_forward.json",
          "schedule_backward.json"})
      if (!fs::exists(out / f))
        throw std::invalid_argument(
            std::string("simulate: missing upstream artifact ") + f +
            " (run plan/design first or drop --reuse-artifacts)");
    plan.curvature_forward = load_curvature_csv(
        (out / "curvature_forward.csv").string(), Direction::forward);
    plan.curvature_backward = load_curvature_csv(
        (out / "curvature_backward.csv").string(), Direction::backward);
    plan.speed_forward = load_speed_csv((out / "speed_forward.csv").string(),
                                        Direction::forward);
    plan.speed_backward = load_speed_csv(
        (out / "speed_backward.csv").string(), Direction::backward);
    std::tie(design.schedule_forward, std::ignore) =
        load_schedule_json((out / "schedule_forward.json").string());
    std::tie(design.schedule_backward, std::ignore) =
        load_schedule_json((out / "schedule_backward.json").string());
  } else {
    plan = run_plan(cfg);
    design = run_design(cfg);
    write_plan(cfg, plan, out);
    write_design(design, cfg.dob, out);
  }

  for (Direction dir : directions(opts.direction)) {
    std::vector<Scenario> scenarios;
    for (ControllerKind kind : cfg.controllers)
      scenarios.push_back(make_scenario(cfg, plan, design, kind, dir));

    std::vector<std::pair<std::string, Metrics>> metric_entries;
    for (const auto& sc : scenarios) {
      const Trajectory traj = simulate(sc);
      const std::string tag =
          std::string(dir_tag(dir)) + "_" + to_string(sc.controller);
      write_trajectory_csv(traj, (out / ("trajectory_" + tag + ".csv")).string());
      metric_entries.emplace_back(to_string(sc.controller),
                                  compute_metrics(traj));
    }
    write_metrics_json(metric_entries,
                       (out / (std::string("metrics_") + dir_tag(dir) +
                               ".json")).string());
    const ComparisonReport report = compare(scenarios);
    write_comparison_markdown(
        report,
        (out / (std::string("comparison_") + dir_tag(dir) + ".md")).string());
    std::cout << "simulate " << dir_tag(dir) << ": "
              << report.entries.size() << " controller(s)";
    if (!report.max_error_ratios_vs_combined.empty())
      std::cout << ", PID_DOB dominates: "
                << (report.combined_dominates ? "yes" : "no");
    std::cout << '\n';
  }
  return 0;
}

int cmd_report(const CommonOpts& opts) {
  const fs::path out(opts.out_dir);
  bool any = false;
  for (Direction dir : directions(opts.direction)) {
    const fs::path md = out / (std::string("comparison_") + dir_tag(dir) +
                               ".md");
    if (!fs::exists(md)) continue;
    any = true;
    std::cout << "== " << dir_tag(dir) << " ==\n"
              << std::ifstream(md).rdbuf() << '\n';
  }
  if (!any)
    throw std::invalid_argument("report: no comparison artifacts in " +
                                opts.out_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parking-maneuver path planning and tracking workbench"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON config file");
    sub->add_option("--preset", opts.preset,
                    "named preset (paper, paper-table-1/3/4)");
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--controllers", opts.controllers,
                    "controller kinds (DOB, PID, PID_DOB)")
        ->delimiter(',');
    sub->add_option("--direction", opts.direction,
                    "forward, backward or both");
  };

  CLI::App* plan = app.add_subcommand("plan", "fit the path, emit curvature");
  CLI::App* design =
      app.add_subcommand("design", "DOB settings and PID gain schedule");
  CLI::App* simulate =
      app.add_subcommand("simulate", "closed-loop runs and comparison");
  CLI::App* report = app.add_subcommand("report", "print stored comparisons");
  for (CLI::App* sub : {plan, design, simulate, report}) add_common(sub);
  simulate->add_flag("--reuse-artifacts", opts.reuse_artifacts,
                     "consume plan/design outputs instead of regenerating");

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out(opts.out_dir);
    if (plan->parsed()) {
      const RunConfig cfg = load(opts);
      fs::create_directories(out);
      const PlanArtifacts artifacts = run_plan(cfg);
      write_plan(cfg, artifacts, out);
      std::cout << "plan: spline with " << artifacts.spline.segments
                << " segments, length "
                << format_double(artifacts.curvature_forward.total_length)
                << " m, constraint residual "
                << format_double(artifacts.fit_report.constraint_residual_inf)
                << '\n';
      return 0;
    }
    if (design->parsed()) {
      const RunConfig cfg = load(opts);
      fs::create_directories(out);
      const DesignArtifacts artifacts = run_design(cfg);
      write_design(artifacts, cfg.dob, out);
      std::cout << "design: " << artifacts.schedule_forward.entries.size()
                << " scheduled speeds per direction\n";
      return 0;
    }
    if (simulate->parsed()) return cmd_simulate(load(opts), opts);
    if (report->parsed()) return cmd_report(opts);
  } catch (const NoAdmissibleGainsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoGains;
  } catch (const SingularFitError& e) {
    std::cerr << "error: " << e.what()
              << " (condition " << e.condition() << ")\n";
    return kExitNumerical;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << " at step " << e.step() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
