#include "maneuver/io/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

namespace maneuver {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object())
    throw std::invalid_argument("config: " + where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("config: unknown key '" + it.key() +
                                  "' in " + where);
}

double num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw std::invalid_argument(std::string("config: ") + key +
                                " must be a number");
  return obj[key].get<double>();
}

int integer(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw std::invalid_argument(std::string("config: ") + key +
                                " must be an integer");
  return obj[key].get<int>();
}

void merge_patch(json& base, const json& patch) {
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    if (it->is_object() && base.contains(it.key()) &&
        base[it.key()].is_object())
      merge_patch(base[it.key()], *it);
    else
      base[it.key()] = *it;
  }
}

}  // namespace

void FitSettings::validate() const {
  if (segments < 1 || order < 1)
    throw std::invalid_argument("fit: m and p must be >= 1");
  if (continuity >= order)
    throw std::invalid_argument("fit: require q < p");
  if (continuity < 0) throw std::invalid_argument("fit: q must be >= 0");
  if (densify_count < (order + 1) * segments)
    throw std::invalid_argument("fit: densify_count under-determines the fit");
}

void SimSettings::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("sim: dt must be > 0");
  if (!(steering_limit > 0.0))
    throw std::invalid_argument("sim: steering_limit must be > 0");
  if (noise_stddev < 0.0)
    throw std::invalid_argument("sim: noise_stddev must be >= 0");
  if (curvature_samples < 2)
    throw std::invalid_argument("sim: curvature_samples must be >= 2");
}

void RunConfig::validate() const {
  fit.validate();
  speed_limits.validate();
  vehicle.validate();
  d_region.validate();
  sim.validate();
  if (anchors.empty()) course.validate();
  if (schedule_speeds.empty())
    throw std::invalid_argument("config: schedule_speeds must be non-empty");
  for (double v : schedule_speeds)
    if (v < kModelSpeedFloor || v > speed_limits.speed_max)
      throw std::invalid_argument("config: schedule speed outside limits");
  if (controllers.empty())
    throw std::invalid_argument("config: no controllers selected");
  if (!(dob.dt > 0.0)) throw std::invalid_argument("config: dob.dt must be > 0");
}

std::vector<Eigen::Vector2d> RunConfig::effective_anchors() const {
  return anchors.empty() ? course_anchors(course) : anchors;
}

json preset_json(const std::string& name) {
  if (name == "paper") return json::object();
  if (name == "paper-table-1")
    return json{{"fit", {{"m", 4}, {"p", 6}, {"q", 3}}}};
  if (name == "paper-table-3")
    return json{{"speed_limits",
                 {{"lat_accel_max", 0.4905},
                  {"long_accel_max", 0.4905},
                  {"speed_max", 1.0},
                  {"speed_min", 0.1},
                  {"preview_gain", 0.5}}}};
  if (name == "paper-table-4")
    return json{{"vehicle",
                 {{"cornering_front", 3e5},
                  {"cornering_rear", 3e5},
                  {"dist_front", 2.0},
                  {"dist_rear", 2.0},
                  {"mass", 3000.0},
                  {"yaw_inertia", 5113.0}}},
                {"dob", {{"natural_freq", 100.0}, {"damping", 0.707}}}};
  throw std::invalid_argument("config: unknown preset '" + name + "'");
}

RunConfig parse_config(const json& raw) {
  json doc = raw;
  if (doc.contains("preset")) {
    json base = preset_json(doc["preset"].get<std::string>());
    doc.erase("preset");
    merge_patch(base, doc);
    doc = base;
  }
  require_keys(doc, "top level",
               {"course", "anchors", "fit", "speed_limits", "vehicle", "dob",
                "d_region", "gain_grid", "schedule_speeds", "sim",
                "controllers", "direction_option"});

  RunConfig cfg;

  if (doc.contains("direction_option")) {
    const std::string side = doc["direction_option"].get<std::string>();
    if (side != "left" && side != "right")
      throw std::invalid_argument("config: direction_option must be "
                                  "'left' or 'right'");
    cfg.course = default_course(side == "left" ? LaneChangeSide::left
                                               : LaneChangeSide::right);
  } else {
    cfg.course = default_course();
  }

  if (doc.contains("course")) {
    const json& c = doc["course"];
    require_keys(c, "course",
                 {"end_x", "end_y", "transition_start", "transition_end"});
    cfg.course.end_pose.x = num(c, "end_x", cfg.course.end_pose.x);
    cfg.course.end_pose.y = num(c, "end_y", cfg.course.end_pose.y);
    cfg.course.transition_start =
        num(c, "transition_start", cfg.course.transition_start);
    cfg.course.transition_end =
        num(c, "transition_end", cfg.course.transition_end);
  }

  if (doc.contains("anchors")) {
    for (const auto& pt : doc["anchors"]) {
      if (!pt.is_array() || pt.size() != 2)
        throw std::invalid_argument("config: anchors must be [x, y] pairs");
      cfg.anchors.emplace_back(pt[0].get<double>(), pt[1].get<double>());
    }
  }

  if (doc.contains("fit")) {
    const json& f = doc["fit"];
    require_keys(f, "fit", {"m", "p", "q", "densify_count"});
    cfg.fit.segments = integer(f, "m", cfg.fit.segments);
    cfg.fit.order = integer(f, "p", cfg.fit.order);
    cfg.fit.continuity = integer(f, "q", cfg.fit.continuity);
    cfg.fit.densify_count = integer(f, "densify_count", cfg.fit.densify_count);
  }

  if (doc.contains("speed_limits")) {
    const json& s = doc["speed_limits"];
    require_keys(s, "speed_limits",
                 {"lat_accel_max", "long_accel_max", "speed_max", "speed_min",
                  "preview_gain"});
    cfg.speed_limits.lat_accel_max =
        num(s, "lat_accel_max", cfg.speed_limits.lat_accel_max);
    cfg.speed_limits.long_accel_max =
        num(s, "long_accel_max", cfg.speed_limits.long_accel_max);
    cfg.speed_limits.speed_max = num(s, "speed_max", cfg.speed_limits.speed_max);
    cfg.speed_limits.speed_min = num(s, "speed_min", cfg.speed_limits.speed_min);
    cfg.speed_limits.preview_gain =
        num(s, "preview_gain", cfg.speed_limits.preview_gain);
  }

  if (doc.contains("vehicle")) {
    const json& v = doc["vehicle"];
    require_keys(v, "vehicle",
                 {"cornering_front", "cornering_rear", "dist_front",
                  "dist_rear", "mass", "yaw_inertia"});
    cfg.vehicle.cornering_front =
        num(v, "cornering_front", cfg.vehicle.cornering_front);
    cfg.vehicle.cornering_rear =
        num(v, "cornering_rear", cfg.vehicle.cornering_rear);
    cfg.vehicle.dist_front = num(v, "dist_front", cfg.vehicle.dist_front);
    cfg.vehicle.dist_rear = num(v, "dist_rear", cfg.vehicle.dist_rear);
    cfg.vehicle.mass = num(v, "mass", cfg.vehicle.mass);
    cfg.vehicle.yaw_inertia = num(v, "yaw_inertia", cfg.vehicle.yaw_inertia);
  }

  if (doc.contains("dob")) {
    const json& d = doc["dob"];
    require_keys(d, "dob", {"natural_freq", "damping", "dt"});
    cfg.dob.natural_freq = num(d, "natural_freq", cfg.dob.natural_freq);
    cfg.dob.damping = num(d, "damping", cfg.dob.damping);
    cfg.dob.dt = num(d, "dt", cfg.dob.dt);
  }

  if (doc.contains("d_region")) {
    const json& d = doc["d_region"];
    require_keys(d, "d_region", {"sigma_min", "zeta_min", "omega_max"});
    cfg.d_region.sigma_min = num(d, "sigma_min", cfg.d_region.sigma_min);
    cfg.d_region.zeta_min = num(d, "zeta_min", cfg.d_region.zeta_min);
    cfg.d_region.omega_max = num(d, "omega_max", cfg.d_region.omega_max);
  }

  if (doc.contains("gain_grid")) {
    const json& g = doc["gain_grid"];
    require_keys(g, "gain_grid",
                 {"kp_min", "kp_max", "kd_min", "kd_max", "resolution"});
    cfg.gain_grid.kp_min = num(g, "kp_min", cfg.gain_grid.kp_min);
    cfg.gain_grid.kp_max = num(g, "kp_max", cfg.gain_grid.kp_max);
    cfg.gain_grid.kd_min = num(g, "kd_min", cfg.gain_grid.kd_min);
    cfg.gain_grid.kd_max = num(g, "kd_max", cfg.gain_grid.kd_max);
    cfg.gain_grid.resolution = integer(g, "resolution", cfg.gain_grid.resolution);
  }

  if (doc.contains("schedule_speeds")) {
    cfg.schedule_speeds.clear();
    for (const auto& v : doc["schedule_speeds"])
      cfg.schedule_speeds.push_back(v.get<double>());
  }

  if (doc.contains("sim")) {
    const json& s = doc["sim"];
    require_keys(s, "sim",
                 {"dt", "steering_limit", "noise_stddev", "noise_seed",
                  "curvature_samples"});
    cfg.sim.dt = num(s, "dt", cfg.sim.dt);
    cfg.sim.steering_limit = num(s, "steering_limit", cfg.sim.steering_limit);
    cfg.sim.noise_stddev = num(s, "noise_stddev", cfg.sim.noise_stddev);
    if (s.contains("noise_seed"))
      cfg.sim.noise_seed = s["noise_seed"].get<std::uint64_t>();
    cfg.sim.curvature_samples =
        integer(s, "curvature_samples", cfg.sim.curvature_samples);
  }

  if (doc.contains("controllers")) {
    cfg.controllers.clear();
    for (const auto& name : doc["controllers"])
      cfg.controllers.push_back(
          controller_from_string(name.get<std::string>()));
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  json doc;
  in >> doc;
  return parse_config(doc);
}

RunConfig config_from_preset(const std::string& name) {
  json doc = preset_json(name);
  return parse_config(doc);
}

}  // namespace maneuver
