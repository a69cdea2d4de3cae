#include "maneuver/sim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "maneuver/control/dob.hpp"
#include "maneuver/errors.hpp"

namespace maneuver {

namespace {

// Arc length keeps advancing through the standstill ramps so the run
// terminates; the plant itself is scheduled no lower than the model floor.
constexpr double kMotionFloor = 0.05;  // m/s
constexpr double kRescheduleSpeedDelta = 0.01;  // m/s
constexpr double kStateBlowup = 1e6;

struct ErrorDynamics {
  const Scenario* sc;

  // State layout: beta, r, dpsi, e_y, x, y, psi, s.
  using State = Eigen::Matrix<double, 8, 1>;

  State deriv(const State& x, double steering) const {
    const double s = x[7];
    const double v_true = sc->speed.speed_at(s);
    const double v_model = std::max(v_true, kModelSpeedFloor);
    const double v_motion = std::max(v_true, kMotionFloor);
    const PlantModel plant =
        assemble_model(sc->vehicle, v_model,
                       sc->preview_gain * v_model, sc->direction);
    const double rho = sc->curvature.kappa_at(s);

    State d;
    const Eigen::Vector4d err = x.head<4>();
    d.head<4>() = plant.a * err + plant.b_steer * steering +
                  plant.b_curvature * rho;
    d[4] = v_motion * std::cos(x[6]);
    d[5] = v_motion * std::sin(x[6]);
    d[6] = x[1];
    d[7] = v_motion;
    return d;
  }

  State rk4(const State& x, double steering, double dt) const {
    const State k1 = deriv(x, steering);
    const State k2 = deriv(x + 0.5 * dt * k1, steering);
    const State k3 = deriv(x + 0.5 * dt * k2, steering);
    const State k4 = deriv(x + dt * k3, steering);
    return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
};

// Ideal PID with a first-order filter on the derivative term, trapezoidal
// discretization, gains applied instantaneously.
class DiscretePid {
 public:
  explicit DiscretePid(double dt) : dt_(dt) {}

  double step(const PidGains& g, double error) {
    integral_ += 0.5 * dt_ * (error + prev_error_);
    const double alpha = 2.0 * g.deriv_filter_tau / dt_;
    const double deriv = ((alpha - 1.0) * prev_deriv_ +
                          (2.0 / dt_) * (error - prev_error_)) /
                         (alpha + 1.0);
    prev_error_ = error;
    prev_deriv_ = deriv;
    return g.kp * error + g.ki * integral_ + g.kd * deriv;
  }

 private:
  double dt_;
  double integral_ = 0.0;
  double prev_error_ = 0.0;
  double prev_deriv_ = 0.0;
};

DobCompensator make_dob_at(const Scenario& sc, double v_model) {
  const PlantModel plant = assemble_model(
      sc.vehicle, v_model, sc.preview_gain * v_model, sc.direction);
  const RationalTF g_n = make_nominal(steering_to_error_tf(plant));
  return synthesize_dob(g_n, make_q_filter(sc.dob.natural_freq,
                                           sc.dob.damping),
                        sc.dt);
}

}  // namespace

std::string to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::dob: return "DOB";
    case ControllerKind::pid: return "PID";
    case ControllerKind::pid_dob: return "PID_DOB";
  }
  return "?";
}

ControllerKind controller_from_string(const std::string& name) {
  if (name == "DOB" || name == "dob") return ControllerKind::dob;
  if (name == "PID" || name == "pid") return ControllerKind::pid;
  if (name == "PID_DOB" || name == "pid_dob" || name == "pid+dob")
    return ControllerKind::pid_dob;
  throw std::invalid_argument("unknown controller kind: " + name);
}

Trajectory simulate(const Scenario& sc) {
  if (!(sc.dt > 0.0)) throw std::invalid_argument("simulate: dt must be > 0");
  if (sc.curvature.samples.empty() || sc.speed.samples.empty())
    throw std::invalid_argument("simulate: empty profiles");
  if (sc.curvature.direction != sc.direction ||
      sc.speed.direction != sc.direction)
    throw std::invalid_argument("simulate: profile direction mismatch");
  const bool uses_pid = sc.controller != ControllerKind::dob;
  const bool uses_dob = sc.controller != ControllerKind::pid;
  if (uses_pid && sc.schedule.entries.empty())
    throw std::invalid_argument("simulate: gain schedule required");

  const double length = sc.curvature.total_length;
  const long max_steps = static_cast<long>(
      std::ceil((length / kMotionFloor + 60.0) / sc.dt));

  ErrorDynamics dyn{&sc};
  ErrorDynamics::State x = ErrorDynamics::State::Zero();
  x[3] = sc.initial_lateral_error;
  x[4] = sc.initial_pose.x;
  x[5] = sc.initial_pose.y;
  x[6] = sc.initial_pose.heading;

  DiscretePid pid(sc.dt);
  DobCompensator dob;
  double dob_speed = -1.0;
  if (uses_dob) {
    dob_speed = std::max(sc.speed.speed_at(0.0), kModelSpeedFloor);
    dob = make_dob_at(sc, dob_speed);
  }

  std::mt19937_64 rng(sc.noise.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Trajectory traj;
  traj.rows.reserve(static_cast<size_t>(std::min(
      max_steps, static_cast<long>(length / (0.5 * kMotionFloor * sc.dt)))));
  double prev_steering = 0.0;

  for (long step = 0;; ++step) {
    const double t = step * sc.dt;
    const double s = x[7];
    const double v_true = sc.speed.speed_at(s);
    const double v_model = std::max(v_true, kModelSpeedFloor);

    double measured = x[3];
    if (sc.noise.stddev > 0.0) measured += sc.noise.stddev * gauss(rng);

    double u_nominal = 0.0;
    if (uses_pid) u_nominal = -pid.step(sc.schedule.at(v_model), measured);
    double u = u_nominal;
    if (uses_dob) {
      if (std::abs(v_model - dob_speed) > kRescheduleSpeedDelta) {
        dob.reschedule(make_dob_at(sc, v_model));
        dob_speed = v_model;
      }
      u = dob.step(u_nominal, measured);
    }
    const double steering = std::clamp(u, -sc.steering_limit,
                                       sc.steering_limit);
    if (uses_dob) dob.set_applied(steering);

    traj.rows.push_back({t, s, x[0], x[1], x[2], x[3], steering,
                         step == 0 ? 0.0 : (steering - prev_steering) / sc.dt,
                         v_true, sc.curvature.kappa_at(s), x[4], x[5], x[6]});
    prev_steering = steering;

    if (s >= length) break;
    if (step >= max_steps)
      throw DivergenceError("simulate: path end not reached", step);

    x = dyn.rk4(x, steering, sc.dt);
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kStateBlowup)
      throw DivergenceError("simulate: state blow-up", step + 1);
  }
  return traj;
}

Metrics compute_metrics(const Trajectory& traj) {
  if (traj.rows.empty())
    throw std::invalid_argument("metrics: empty trajectory");
  Metrics m;
  double sq_sum = 0.0;
  for (const auto& r : traj.rows) {
    m.max_abs_lateral_error =
        std::max(m.max_abs_lateral_error, std::abs(r.lateral_error));
    m.max_abs_steering = std::max(m.max_abs_steering, std::abs(r.steering));
    m.max_abs_steering_rate =
        std::max(m.max_abs_steering_rate, std::abs(r.steering_rate));
    sq_sum += r.lateral_error * r.lateral_error;
  }
  m.rms_lateral_error = std::sqrt(sq_sum / traj.rows.size());
  return m;
}

ComparisonReport compare(const std::vector<Scenario>& scenarios) {
  if (scenarios.empty())
    throw std::invalid_argument("compare: no scenarios");
  const auto& ref = scenarios.front();
  for (const auto& sc : scenarios) {
    if (sc.direction != ref.direction ||
        sc.curvature.samples.size() != ref.curvature.samples.size() ||
        std::abs(sc.curvature.total_length - ref.curvature.total_length) >
            1e-12)
      throw std::invalid_argument("compare: scenario geometry mismatch");
  }

  ComparisonReport report;
  for (const auto& sc : scenarios)
    report.entries.push_back({sc.controller,
                              compute_metrics(simulate(sc))});

  const auto combined = std::find_if(
      report.entries.begin(), report.entries.end(),
      [](const auto& e) { return e.controller == ControllerKind::pid_dob; });
  if (combined != report.entries.end()) {
    report.combined_dominates = true;
    for (const auto& e : report.entries) {
      if (e.controller == ControllerKind::pid_dob) continue;
      report.max_error_ratios_vs_combined.push_back(
          e.metrics.max_abs_lateral_error /
          combined->metrics.max_abs_lateral_error);
      if (e.metrics.max_abs_lateral_error <=
              combined->metrics.max_abs_lateral_error ||
          e.metrics.rms_lateral_error <= combined->metrics.rms_lateral_error)
        report.combined_dominates = false;
    }
  }
  return report;
}

}  // namespace maneuver
