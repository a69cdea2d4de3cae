#include "maneuver/control/dstability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maneuver/errors.hpp"

namespace maneuver {

void DRegion::validate() const {
  if (!(sigma_min >= 0.0))
    throw std::invalid_argument("D-region: sigma_min must be >= 0");
  if (!(zeta_min >= 0.0 && zeta_min < 1.0))
    throw std::invalid_argument("D-region: zeta_min must be in [0, 1)");
  if (!(omega_max > sigma_min))
    throw std::invalid_argument("D-region: omega_max must exceed sigma_min");
}

bool d_stable(std::span<const std::complex<double>> poles,
              const DRegion& region) {
  const double cone = std::sqrt(1.0 - region.zeta_min * region.zeta_min);
  for (const auto& s : poles) {
    const double mag = std::abs(s);
    // A pole pinned at the origin is never acceptable, even for
    // sigma_min = 0 where the half-plane test alone would admit it.
    if (mag == 0.0) return false;
    if (s.real() > -region.sigma_min) return false;
    if (mag > region.omega_max) return false;
    if (std::abs(s.imag()) > cone * mag) return false;
  }
  return true;
}

Poly closed_loop_charpoly(const RationalTF& plant, double kp, double ki,
                          double kd) {
  // 1 + C G = 0 with C = (kd s^2 + kp s + ki)/s:
  //   s * dg + (kd s^2 + kp s + ki) * ng = 0
  // With ki = 0 the controller degenerates to PD and its integrator cancels:
  //   dg + (kd s + kp) ng = 0
  if (ki == 0.0) {
    Poly c(2);
    c << kd, kp;
    return poly_add(plant.den, poly_mul(c, plant.num));
  }
  Poly s1(2);
  s1 << 1.0, 0.0;
  Poly c(3);
  c << kd, kp, ki;
  return poly_add(poly_mul(s1, plant.den), poly_mul(c, plant.num));
}

namespace {

bool point_admissible(const RationalTF& plant, const DRegion& region,
                      double kp, double ki, double kd) {
  const Eigen::VectorXcd roots =
      poly_roots(closed_loop_charpoly(plant, kp, ki, kd));
  std::vector<std::complex<double>> poles(roots.data(),
                                          roots.data() + roots.size());
  return d_stable(poles, region);
}

// CRB trace along s = -sigma_min + j omega: the characteristic equation is
// linear in (kp, kd) at fixed ki, two real equations per omega.
std::vector<Eigen::Vector2d> trace_crb_sigma(const RationalTF& plant,
                                             const DRegion& region,
                                             double ki, int n_points) {
  std::vector<Eigen::Vector2d> out;
  out.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double omega =
        region.omega_max * (i + 1) / static_cast<double>(n_points);
    const std::complex<double> s(-region.sigma_min, omega);
    const std::complex<double> ng = poly_eval(plant.num, s);
    const std::complex<double> dg = poly_eval(plant.den, s);
    // kp (s ng) + kd (s^2 ng) = -(s dg + ki ng)
    const std::complex<double> a1 = s * ng;
    const std::complex<double> a2 = s * s * ng;
    const std::complex<double> rhs = -(s * dg + ki * ng);
    Eigen::Matrix2d mat;
    mat << a1.real(), a2.real(), a1.imag(), a2.imag();
    const double det = mat.determinant();
    if (std::abs(det) < 1e-12 * (std::abs(a1) * std::abs(a2) + 1e-300))
      continue;
    const Eigen::Vector2d sol =
        mat.inverse() * Eigen::Vector2d(rhs.real(), rhs.imag());
    out.emplace_back(sol);
  }
  return out;
}

AdmissibleMap build_map(const RationalTF& plant, const DRegion& region,
                        double ki, const GainGrid& grid, bool parallel) {
  region.validate();
  if (grid.resolution < 16)
    throw std::invalid_argument("gain map: resolution must be >= 16");

  AdmissibleMap map;
  map.ki = ki;
  map.kp_values.resize(grid.resolution);
  map.kd_values.resize(grid.resolution);
  for (int i = 0; i < grid.resolution; ++i) {
    const double f = static_cast<double>(i) / (grid.resolution - 1);
    map.kp_values[i] = grid.kp_min + f * (grid.kp_max - grid.kp_min);
    map.kd_values[i] = grid.kd_min + f * (grid.kd_max - grid.kd_min);
  }
  const int nk = grid.resolution;
  map.admissible.assign(static_cast<size_t>(nk) * nk, 0);

  std::uint8_t* flags = map.admissible.data();
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int ip = 0; ip < nk; ++ip) {
    for (int id = 0; id < nk; ++id)
      flags[static_cast<size_t>(ip) * nk + id] =
          point_admissible(plant, region, map.kp_values[ip], ki,
                           map.kd_values[id])
              ? 1
              : 0;
  }

  for (int ip = 0; ip < nk; ++ip)
    for (int id = 0; id < nk; ++id) {
      if (!map.at(ip, id)) continue;
      map.any_admissible = true;
      const bool edge = (ip == 0 || !map.at(ip - 1, id)) ||
                        (ip == nk - 1 || !map.at(ip + 1, id)) ||
                        (id == 0 || !map.at(ip, id - 1)) ||
                        (id == nk - 1 || !map.at(ip, id + 1));
      if (edge)
        map.boundary.emplace_back(map.kp_values[ip], map.kd_values[id]);
    }

  map.crb_sigma_edge = trace_crb_sigma(plant, region, ki, 4 * nk);
  return map;
}

}  // namespace

AdmissibleMap admissible_gain_map(const RationalTF& plant,
                                  const DRegion& region, double ki,
                                  const GainGrid& grid) {
  return build_map(plant, region, ki, grid, true);
}

AdmissibleMap admissible_gain_map_serial(const RationalTF& plant,
                                         const DRegion& region, double ki,
                                         const GainGrid& grid) {
  return build_map(plant, region, ki, grid, false);
}

PidGains select_gains(const AdmissibleMap& map) {
  if (!map.any_admissible)
    throw NoAdmissibleGainsError("select_gains: empty admissible set", 0.0);

  const int nk = static_cast<int>(map.kp_values.size());
  auto interior = [&](int ip, int id) {
    for (int dp = -1; dp <= 1; ++dp)
      for (int dd = -1; dd <= 1; ++dd) {
        const int p = ip + dp, d = id + dd;
        if (p < 0 || p >= nk || d < 0 || d >= nk || !map.at(p, d))
          return false;
      }
    return true;
  };

  // Strongest proportional action with the lightest derivative action keeps
  // the quasi-static tracking error small without inflating the fast poles.
  int best_ip = -1, best_id = -1;
  for (int ip = nk - 1; ip >= 0 && best_ip < 0; --ip)
    for (int id = 0; id < nk; ++id)
      if (interior(ip, id)) {
        best_ip = ip;
        best_id = id;
        break;
      }

  // Degenerate thin sets: fall back to any admissible cell, largest kp first.
  if (best_ip < 0) {
    for (int ip = nk - 1; ip >= 0 && best_ip < 0; --ip)
      for (int id = 0; id < nk; ++id)
        if (map.at(ip, id)) {
          best_ip = ip;
          best_id = id;
          break;
        }
  }

  PidGains gains;
  gains.kp = map.kp_values[best_ip];
  gains.kd = map.kd_values[best_id];
  gains.ki = map.ki;
  return gains;
}

PidGains GainSchedule::at(double speed) const {
  if (entries.empty()) throw std::invalid_argument("schedule: empty");
  if (speed <= entries.front().speed) return entries.front().gains;
  if (speed >= entries.back().speed) return entries.back().gains;
  for (size_t i = 1; i < entries.size(); ++i) {
    if (speed <= entries[i].speed) {
      const auto& lo = entries[i - 1];
      const auto& hi = entries[i];
      const double w = (speed - lo.speed) / (hi.speed - lo.speed);
      PidGains g;
      g.kp = lo.gains.kp + w * (hi.gains.kp - lo.gains.kp);
      g.ki = lo.gains.ki + w * (hi.gains.ki - lo.gains.ki);
      g.kd = lo.gains.kd + w * (hi.gains.kd - lo.gains.kd);
      g.deriv_filter_tau = lo.gains.deriv_filter_tau;
      return g;
    }
  }
  return entries.back().gains;
}

GainSchedule build_schedule(const VehicleParams& params, Direction direction,
                            std::span<const double> speed_grid,
                            const DRegion& region, const DobSettings& dob,
                            double preview_gain, const GainGrid& grid) {
  region.validate();
  if (speed_grid.empty())
    throw std::invalid_argument("schedule: empty speed grid");

  GainSchedule schedule;
  schedule.direction = direction;
  // Validate the DOB settings up front; the PID design itself only needs
  // the DOB-regulated nominal plant G_n.
  make_q_filter(dob.natural_freq, dob.damping);

  for (double speed : speed_grid) {
    if (speed < kModelSpeedFloor)
      throw std::invalid_argument("schedule: speed below the model floor");
    const PlantModel plant =
        assemble_model(params, speed, preview_gain * speed, direction);
    const RationalTF g_n = make_nominal(steering_to_error_tf(plant));

    static constexpr double kKiCandidates[] = {0.0, 0.01, 0.1};
    bool designed = false;
    for (double ki : kKiCandidates) {
      const AdmissibleMap map = admissible_gain_map(g_n, region, ki, grid);
      if (!map.any_admissible) continue;
      schedule.entries.push_back({speed, select_gains(map)});
      designed = true;
      break;
    }
    if (!designed)
      throw NoAdmissibleGainsError(
          "schedule: no admissible gains at speed " + std::to_string(speed),
          speed);
  }
  std::sort(schedule.entries.begin(), schedule.entries.end(),
            [](const auto& a, const auto& b) { return a.speed < b.speed; });
  return schedule;
}

}  // namespace maneuver
