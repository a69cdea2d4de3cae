#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "maneuver/control/dob.hpp"
#include "maneuver/model/plant.hpp"

using namespace maneuver;

namespace {

Poly make_poly(std::initializer_list<double> coeffs) {
  Poly p(static_cast<int>(coeffs.size()));
  int i = 0;
  for (double c : coeffs) p[i++] = c;
  return p;
}

RationalTF paper_plant(double v) {
  return steering_to_error_tf(
      assemble_model(VehicleParams{}, v, 0.5 * v, Direction::forward));
}

}  // namespace

TEST_CASE("Q filter has unity DC gain and order two, strictly proper") {
  for (double wn : {10.0, 100.0, 350.0})
    for (double xi : {0.4, 0.707, 1.2}) {
      const RationalTF q = make_q_filter(wn, xi).tf();
      CHECK(std::abs(q.eval({0.0, 0.0}) - std::complex<double>(1.0)) <
            1e-14);
      CHECK(q.den_degree() == 2);
      CHECK(q.relative_degree() == 2);
    }
  CHECK_THROWS_AS(make_q_filter(-1.0, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(make_q_filter(100.0, 0.0), std::invalid_argument);
}

TEST_CASE("nominal plant is a pure 1.01 gain scale") {
  const RationalTF g(make_poly({1.0}), make_poly({1.0, 1.0}));
  const RationalTF gn = make_nominal(g);
  // G(1) = 0.5 -> G_n(1) = 0.505.
  CHECK(std::abs(gn.eval({1.0, 0.0}) - std::complex<double>(0.505)) < 1e-14);
  CHECK((gn.den - g.den).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bilinear first-order lag matches the analytic step response") {
  // 1/(tau s + 1), step response 1 - exp(-t/tau); trapezoidal integration
  // converges with O(dt^2) error.
  const double tau = 0.05, dt = 1e-4;
  DiscreteFilter f = DiscreteFilter::bilinear(
      RationalTF(make_poly({1.0}), make_poly({tau, 1.0})), dt);
  double worst = 0.0;
  double y = 0.0;
  for (int k = 0; k < 20000; ++k) {
    y = f.step(1.0);
    const double t = (k + 0.5) * dt;  // trapezoid aligns to midstep
    worst = std::max(worst, std::abs(y - (1.0 - std::exp(-t / tau))));
  }
  CHECK(worst < 1e-3);
  CHECK(y == doctest::Approx(1.0).epsilon(1e-6));  // settled at DC gain
}

TEST_CASE("bilinear map preserves the frequency response at low frequency") {
  const RationalTF q = make_q_filter(100.0, 0.707).tf();
  const double dt = 1e-4;
  DiscreteFilter f = DiscreteFilter::bilinear(q, dt);
  // Evaluate H(z) at z = exp(j w dt) against Q(jw).
  for (double w : {1.0, 10.0, 50.0}) {
    const std::complex<double> z = std::exp(std::complex<double>(0, w * dt));
    // Direct evaluation in powers of z^-1.
    std::complex<double> num = 0.0, den = 0.0;
    std::complex<double> zi = 1.0;
    for (size_t i = 0; i < f.num().size(); ++i) {
      num += f.num()[i] * zi;
      den += f.den()[i] * zi;
      zi /= z;
    }
    const std::complex<double> discrete = num / den;
    const std::complex<double> continuous = q.freq(w);
    CHECK(std::abs(discrete - continuous) < 1e-4 * std::abs(continuous));
  }
}

TEST_CASE("improper Q/G_n combinations are rejected") {
  // Relative degree 1 Q against a relative degree 2 plant leaves Q/G_n
  // improper; the synthesis must refuse it.
  const RationalTF g = paper_plant(1.0);
  const RationalTF q1(make_poly({10.0}), make_poly({1.0, 10.0}));
  RationalTF q_over_gn(poly_mul(q1.num, g.den), poly_mul(q1.den, g.num));
  CHECK_FALSE(q_over_gn.proper());
  CHECK_THROWS_AS(DiscreteFilter::bilinear(q_over_gn, 1e-3),
                  std::invalid_argument);

  // The standard second-order Q is exactly proper against this plant.
  CHECK_NOTHROW(synthesize_dob(make_nominal(g),
                               make_q_filter(100.0, 0.707), 1e-3));
}

TEST_CASE("matched nominal model makes the inner loop transparent") {
  const RationalTF g = paper_plant(1.0);
  const QFilter q = make_q_filter(100.0, 0.707);
  auto [t_un, t_d, t_n] = dob_loop_tfs(g, g, q);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> logw(-3.0, 4.0);
  for (int k = 0; k < 50; ++k) {
    const double w = std::pow(10.0, logw(rng));
    const std::complex<double> lhs = t_un.freq(w);
    const std::complex<double> rhs = g.freq(w);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
  }
}

TEST_CASE("disturbance dies at DC and noise dies at high frequency") {
  const RationalTF g = paper_plant(1.0);
  const RationalTF gn = make_nominal(g);
  const QFilter q = make_q_filter(100.0, 0.707);
  auto [t_un, t_d, t_n] = dob_loop_tfs(g, gn, q);
  CHECK(std::abs(t_d.freq(1e-3)) < 1e-3);
  CHECK(std::abs(t_n.freq(1e5)) < 1e-3);
  // In the Q passband the noise channel passes nearly unchanged.
  CHECK(std::abs(t_n.freq(1e-2)) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("compensator stays quiet with zero excitation") {
  DobCompensator dob = synthesize_dob(make_nominal(paper_plant(0.5)),
                                      make_q_filter(100.0, 0.707), 1e-3);
  for (int k = 0; k < 100; ++k) {
    const double u = dob.step(0.0, 0.0);
    CHECK(u == 0.0);
    dob.set_applied(u);
  }
}

TEST_CASE("compensator tracks the nominal command when error is zero") {
  DobCompensator dob = synthesize_dob(make_nominal(paper_plant(1.0)),
                                      make_q_filter(100.0, 0.707), 1e-3);
  // With zero measured error, u = u_n + Q u_prev; feeding back the applied
  // value converges to u_n / (1 - Q(DC)) only if Q had DC < 1 -- here
  // Q(1) = 1, so the loop integrates. Verify the first step passes u_n
  // through untouched (the Q branch is one sample behind).
  const double u0 = dob.step(0.25, 0.0);
  CHECK(u0 == doctest::Approx(0.25));
}

TEST_CASE("reschedule keeps filter state across a speed change") {
  DobCompensator a = synthesize_dob(make_nominal(paper_plant(0.5)),
                                    make_q_filter(100.0, 0.707), 1e-3);
  DobCompensator b = synthesize_dob(make_nominal(paper_plant(0.52)),
                                    make_q_filter(100.0, 0.707), 1e-3);
  // Drive filter a for a while, then retarget to b's coefficients: the next
  // output must stay continuous (no state reset transient to zero).
  double u = 0.0;
  for (int k = 0; k < 500; ++k) {
    u = a.step(0.0, 0.01);
    a.set_applied(u);
  }
  const double before = u;
  a.reschedule(b);
  u = a.step(0.0, 0.01);
  CHECK(std::abs(u - before) < 0.1 * std::abs(before) + 1e-6);
}
