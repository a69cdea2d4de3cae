#include "maneuver/io/artifacts.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace maneuver {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return in;
}

Direction direction_from_string(const std::string& s) {
  if (s == "forward") return Direction::forward;
  if (s == "backward") return Direction::backward;
  throw std::invalid_argument("unknown direction: " + s);
}

const char* to_cstr(Direction d) {
  return d == Direction::forward ? "forward" : "backward";
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_spline_csv(const PathSpline& spline, const std::string& path) {
  auto out = open_out(path);
  out << "segment,k,a_k,b_k\n";
  for (int seg = 0; seg < spline.segments; ++seg)
    for (int k = 0; k <= spline.order; ++k)
      out << seg << ',' << k << ',' << format_double(spline.coeffs_x(seg, k))
          << ',' << format_double(spline.coeffs_y(seg, k)) << '\n';
}

void write_curvature_csv(const CurvatureProfile& prof,
                         const std::string& path) {
  auto out = open_out(path);
  out << "s_m,kappa_per_m\n";
  for (const auto& s : prof.samples)
    out << format_double(s.s) << ',' << format_double(s.kappa) << '\n';
}

void write_speed_csv(const SpeedProfile& prof, const std::string& path) {
  auto out = open_out(path);
  out << "s_m,v_mps,ls_m\n";
  for (const auto& s : prof.samples)
    out << format_double(s.s) << ',' << format_double(s.speed) << ','
        << format_double(s.preview) << '\n';
}

void write_admissible_csv(const AdmissibleMap& map, const std::string& path) {
  auto out = open_out(path);
  out << "k_p,k_d,admissible\n";
  for (size_t ip = 0; ip < map.kp_values.size(); ++ip)
    for (size_t id = 0; id < map.kd_values.size(); ++id)
      out << format_double(map.kp_values[ip]) << ','
          << format_double(map.kd_values[id]) << ','
          << (map.at(static_cast<int>(ip), static_cast<int>(id)) ? 1 : 0)
          << '\n';
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  auto out = open_out(path);
  out << "t,s,beta,r,dpsi,ey,delta,delta_rate,v,kappa\n";
  for (const auto& r : traj.rows)
    out << format_double(r.t) << ',' << format_double(r.s) << ','
        << format_double(r.beta) << ',' << format_double(r.yaw_rate) << ','
        << format_double(r.heading_error) << ','
        << format_double(r.lateral_error) << ','
        << format_double(r.steering) << ','
        << format_double(r.steering_rate) << ',' << format_double(r.speed)
        << ',' << format_double(r.kappa) << '\n';
}

void write_metrics_json(
    const std::vector<std::pair<std::string, Metrics>>& entries,
    const std::string& path) {
  json doc = json::object();
  for (const auto& [name, m] : entries)
    doc[name] = {{"max_abs_ey", m.max_abs_lateral_error},
                 {"rms_ey", m.rms_lateral_error},
                 {"max_abs_delta", m.max_abs_steering},
                 {"max_abs_delta_rate", m.max_abs_steering_rate}};
  open_out(path) << doc.dump(2) << '\n';
}

void write_comparison_markdown(const ComparisonReport& report,
                               const std::string& path) {
  auto out = open_out(path);
  out << "| Metric |";
  for (const auto& e : report.entries) out << ' ' << to_string(e.controller) << " |";
  out << "\n|---|";
  for (size_t i = 0; i < report.entries.size(); ++i) out << "---|";
  out << '\n';
  auto row = [&](const char* label, auto getter) {
    out << "| " << label << " |";
    for (const auto& e : report.entries)
      out << ' ' << format_double(getter(e.metrics)) << " |";
    out << '\n';
  };
  row("Max absolute path-tracking error [m]",
      [](const Metrics& m) { return m.max_abs_lateral_error; });
  row("RMS path-tracking error [m]",
      [](const Metrics& m) { return m.rms_lateral_error; });
  row("Max absolute steering angle [rad]",
      [](const Metrics& m) { return m.max_abs_steering; });
  row("Max absolute steering rate [rad/sec]",
      [](const Metrics& m) { return m.max_abs_steering_rate; });
  if (!report.max_error_ratios_vs_combined.empty()) {
    out << "\nMax-error ratio vs PID_DOB:";
    for (double r : report.max_error_ratios_vs_combined)
      out << ' ' << format_double(r);
    out << "\n\nPID_DOB dominates on max and RMS error: "
        << (report.combined_dominates ? "yes" : "no") << '\n';
  }
}

void write_schedule_json(const GainSchedule& schedule, const DobSettings& dob,
                         const std::string& path) {
  json doc;
  doc["direction"] = to_cstr(schedule.direction);
  doc["dob"] = {{"natural_freq", dob.natural_freq},
                {"damping", dob.damping},
                {"dt", dob.dt}};
  doc["entries"] = json::array();
  for (const auto& e : schedule.entries)
    doc["entries"].push_back({{"v", e.speed},
                              {"k_p", e.gains.kp},
                              {"k_i", e.gains.ki},
                              {"k_d", e.gains.kd},
                              {"tau_d", e.gains.deriv_filter_tau}});
  open_out(path) << doc.dump(2) << '\n';
}

std::pair<GainSchedule, DobSettings> load_schedule_json(
    const std::string& path) {
  json doc;
  open_in(path) >> doc;
  GainSchedule schedule;
  schedule.direction = direction_from_string(doc.at("direction"));
  DobSettings dob;
  dob.natural_freq = doc.at("dob").at("natural_freq");
  dob.damping = doc.at("dob").at("damping");
  dob.dt = doc.at("dob").at("dt");
  for (const auto& e : doc.at("entries")) {
    PidGains g;
    g.kp = e.at("k_p");
    g.ki = e.at("k_i");
    g.kd = e.at("k_d");
    g.deriv_filter_tau = e.at("tau_d");
    schedule.entries.push_back({e.at("v").get<double>(), g});
  }
  return {schedule, dob};
}

CurvatureProfile load_curvature_csv(const std::string& path,
                                    Direction direction) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);  // header
  CurvatureProfile prof;
  prof.direction = direction;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double s, kappa;
    char comma;
    row >> s >> comma >> kappa;
    prof.samples.push_back({s, kappa});
  }
  if (prof.samples.empty())
    throw std::invalid_argument("empty curvature csv: " + path);
  prof.total_length = prof.samples.back().s;
  return prof;
}

SpeedProfile load_speed_csv(const std::string& path, Direction direction) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  SpeedProfile prof;
  prof.direction = direction;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double s, v, ls;
    char c1, c2;
    row >> s >> c1 >> v >> c2 >> ls;
    prof.samples.push_back({s, v, ls});
  }
  if (prof.samples.empty())
    throw std::invalid_argument("empty speed csv: " + path);
  return prof;
}

}  // namespace maneuver
