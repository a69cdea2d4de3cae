#pragma once

#include <tuple>
#include <vector>

#include "maneuver/control/rational_tf.hpp"

namespace maneuver {

// Unity-DC-gain second-order low-pass setting the DOB bandwidth.
struct QFilter {
  double natural_freq = 100.0;  // rad/s
  double damping = 0.707;

  RationalTF tf() const;
};

QFilter make_q_filter(double natural_freq, double damping);

// Nominal plant: numerator scaled by 1.01, denominator untouched.
RationalTF make_nominal(const RationalTF& g);

// Bilinear-discretized SISO filter, direct form II transposed.
class DiscreteFilter {
 public:
  DiscreteFilter() = default;
  static DiscreteFilter bilinear(const RationalTF& continuous, double dt);

  double step(double input);
  // Swap in new coefficients, carrying the internal state across (same
  // order required).
  void retarget(const DiscreteFilter& fresh);

  const std::vector<double>& num() const { return b_; }
  const std::vector<double>& den() const { return a_; }

 private:
  std::vector<double> b_;  // z^0, z^-1, ... (a_[0] normalized to 1)
  std::vector<double> a_;
  std::vector<double> state_;
};

// Inner-loop compensator u = u_n - (Q/G_n) y + Q u, both branches bilinear
// at the control period. The Q branch acts on the previously applied
// steering (one-sample delay breaks the algebraic loop).
class DobCompensator {
 public:
  DobCompensator() = default;
  DobCompensator(DiscreteFilter branch_error, DiscreteFilter branch_input,
                 double dt);

  // nominal_cmd is u_n; measured_error is the (possibly noisy) e_y.
  double step(double nominal_cmd, double measured_error);
  // Record the steering actually applied after saturation; it feeds the Q
  // branch on the next step.
  void set_applied(double u) { applied_ = u; }

  double dt() const { return dt_; }
  // Re-discretized branches for a new scheduling point, states carried.
  void reschedule(const DobCompensator& fresh);

 private:
  DiscreteFilter branch_error_;
  DiscreteFilter branch_input_;
  double dt_ = 0.0;
  double applied_ = 0.0;
};

DobCompensator synthesize_dob(const RationalTF& g_nominal, const QFilter& q,
                              double dt);

// Closed-form loop transfer functions of the DOB inner loop:
// command tracking y/u_n, output disturbance y/d, sensor noise y/n.
std::tuple<RationalTF, RationalTF, RationalTF> dob_loop_tfs(
    const RationalTF& g, const RationalTF& g_nominal, const QFilter& q);

}  // namespace maneuver
