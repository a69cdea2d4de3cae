#pragma once

#include <complex>
#include <span>
#include <vector>

#include "maneuver/control/dob.hpp"
#include "maneuver/control/rational_tf.hpp"
#include "maneuver/model/plant.hpp"
#include "maneuver/speed/profile.hpp"

namespace maneuver {

// Pole placement region: Re(s) <= -sigma_min, damping >= zeta_min,
// |s| <= omega_max. A pole at exactly s = 0 is always outside.
// The defaults accommodate this plant family: the steering->error transfer
// function keeps a slow zero near -0.49*V that pins one closed-loop pole, so
// sigma_min must sit below it at the lowest scheduled speed, and the fast
// chassis poles (|s| up to ~5e3 rad/s at the model speed floor) persist in
// closed loop, so omega_max must sit above them.
struct DRegion {
  double sigma_min = 0.04;    // rad/s
  double zeta_min = 0.5;
  double omega_max = 2.0e4;   // rad/s

  void validate() const;
};

bool d_stable(std::span<const std::complex<double>> poles,
              const DRegion& region);

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double deriv_filter_tau = 0.01;  // s, pure kd*s is improper
};

// Characteristic polynomial of the unity-feedback loop C(s)G(s) with the
// ideal PID form kp + ki/s + kd*s.
Poly closed_loop_charpoly(const RationalTF& plant, double kp, double ki,
                          double kd);

struct GainGrid {
  double kp_min = 0.0, kp_max = 80.0;
  double kd_min = 0.0, kd_max = 80.0;
  int resolution = 64;  // per axis, >= 16
};

struct AdmissibleMap {
  std::vector<double> kp_values;
  std::vector<double> kd_values;
  double ki = 0.0;
  // Row-major over (kp index, kd index).
  std::vector<std::uint8_t> admissible;
  // Grid cells on the admissible/inadmissible transition.
  std::vector<Eigen::Vector2d> boundary;
  // CRB trace of the sigma_min edge: gains putting a pole pair exactly on
  // s = -sigma_min + j omega.
  std::vector<Eigen::Vector2d> crb_sigma_edge;
  bool any_admissible = false;

  bool at(int ikp, int ikd) const {
    return admissible[static_cast<size_t>(ikp) * kd_values.size() + ikd] != 0;
  }
};

// Maps the D-stable subset of the (kp, kd) plane at fixed ki. The OpenMP
// kernel and the serial reference produce identical maps.
AdmissibleMap admissible_gain_map(const RationalTF& plant,
                                  const DRegion& region, double ki,
                                  const GainGrid& grid);
AdmissibleMap admissible_gain_map_serial(const RationalTF& plant,
                                         const DRegion& region, double ki,
                                         const GainGrid& grid);

// Picks the strongest admissible proportional action with the lightest
// derivative action: maximum kp, then minimum kd, restricted to cells whose
// full grid neighborhood is also admissible (one-cell robustness margin).
// Throws NoAdmissibleGainsError when the map is empty.
PidGains select_gains(const AdmissibleMap& map);

struct GainSchedule {
  struct Entry {
    double speed;
    PidGains gains;
  };
  std::vector<Entry> entries;  // speed strictly increasing
  Direction direction = Direction::forward;

  PidGains at(double speed) const;  // linear interpolation, clamped
};

struct DobSettings {
  double natural_freq = 100.0;  // rad/s
  double damping = 0.707;
  double dt = 0.001;            // s
};

// Designs one PID entry per grid speed against the DOB-regulated nominal
// plant G_n. ki is swept over small candidates, keeping the smallest value
// with a nonempty admissible set.
GainSchedule build_schedule(const VehicleParams& params, Direction direction,
                            std::span<const double> speed_grid,
                            const DRegion& region, const DobSettings& dob,
                            double preview_gain, const GainGrid& grid);

}  // namespace maneuver
