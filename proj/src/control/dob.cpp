#include "maneuver/control/dob.hpp"

#include <cmath>
#include <stdexcept>

namespace maneuver {

RationalTF QFilter::tf() const {
  Poly num(1), den(3);
  num << natural_freq * natural_freq;
  den << 1.0, 2.0 * damping * natural_freq, natural_freq * natural_freq;
  return RationalTF(num, den);
}

QFilter make_q_filter(double natural_freq, double damping) {
  if (!(natural_freq > 0.0) || !(damping > 0.0))
    throw std::invalid_argument("Q filter: parameters must be positive");
  return QFilter{natural_freq, damping};
}

RationalTF make_nominal(const RationalTF& g) {
  return RationalTF(poly_scale(g.num, 1.01), g.den);
}

DiscreteFilter DiscreteFilter::bilinear(const RationalTF& continuous,
                                        double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("bilinear: dt must be > 0");
  if (!continuous.proper())
    throw std::invalid_argument("bilinear: improper transfer function");

  const int n = continuous.den_degree();
  // Pad the numerator to a common degree, then substitute
  // s = (2/dt)(z-1)/(z+1) and clear (z+1)^n.
  Poly num = Poly::Zero(n + 1);
  num.tail(continuous.num.size()) = continuous.num;
  const Poly& den = continuous.den;

  Poly zm1(2), zp1(2);
  zm1 << 1.0, -1.0;
  zp1 << 1.0, 1.0;
  const double c = 2.0 / dt;

  Poly bz = Poly::Zero(n + 1), az = Poly::Zero(n + 1);
  for (int k = 0; k <= n; ++k) {
    // Coefficient of s^k is at index n-k; term is c^k (z-1)^k (z+1)^(n-k).
    Poly term(1);
    term << std::pow(c, k);
    for (int i = 0; i < k; ++i) term = poly_mul(term, zm1);
    for (int i = 0; i < n - k; ++i) term = poly_mul(term, zp1);
    bz = poly_add(bz, poly_scale(term, num[n - k]));
    az = poly_add(az, poly_scale(term, den[n - k]));
  }

  DiscreteFilter f;
  f.b_.resize(n + 1);
  f.a_.resize(n + 1);
  const double a0 = az[0];
  if (a0 == 0.0) throw std::runtime_error("bilinear: singular mapping");
  for (int i = 0; i <= n; ++i) {
    f.b_[i] = bz[i] / a0;
    f.a_[i] = az[i] / a0;
  }
  f.state_.assign(n, 0.0);
  return f;
}

double DiscreteFilter::step(double input) {
  if (b_.empty()) return 0.0;
  const int n = static_cast<int>(state_.size());
  const double output = b_[0] * input + (n > 0 ? state_[0] : 0.0);
  for (int i = 0; i < n; ++i) {
    const double next = i + 1 < n ? state_[i + 1] : 0.0;
    state_[i] = b_[i + 1] * input - a_[i + 1] * output + next;
  }
  return output;
}

void DiscreteFilter::retarget(const DiscreteFilter& fresh) {
  if (fresh.state_.size() != state_.size()) {
    *this = fresh;
    return;
  }
  b_ = fresh.b_;
  a_ = fresh.a_;
}

DobCompensator::DobCompensator(DiscreteFilter branch_error,
                               DiscreteFilter branch_input, double dt)
    : branch_error_(std::move(branch_error)),
      branch_input_(std::move(branch_input)),
      dt_(dt) {}

double DobCompensator::step(double nominal_cmd, double measured_error) {
  const double y_term = branch_error_.step(measured_error);
  const double u_term = branch_input_.step(applied_);
  return nominal_cmd - y_term + u_term;
}

void DobCompensator::reschedule(const DobCompensator& fresh) {
  branch_error_.retarget(fresh.branch_error_);
  branch_input_.retarget(fresh.branch_input_);
  dt_ = fresh.dt_;
}

DobCompensator synthesize_dob(const RationalTF& g_nominal, const QFilter& q,
                              double dt) {
  const RationalTF q_tf = q.tf();
  RationalTF q_over_gn(poly_mul(q_tf.num, g_nominal.den),
                       poly_mul(q_tf.den, g_nominal.num));
  if (!q_over_gn.proper())
    throw std::invalid_argument("DOB: Q/G_n improper, raise the Q order");
  return DobCompensator(DiscreteFilter::bilinear(q_over_gn, dt),
                        DiscreteFilter::bilinear(q_tf, dt), dt);
}

std::tuple<RationalTF, RationalTF, RationalTF> dob_loop_tfs(
    const RationalTF& g, const RationalTF& g_nominal, const QFilter& q) {
  const RationalTF q_tf = q.tf();
  const Poly& ng = g.num;
  const Poly& dg = g.den;
  const Poly& nn = g_nominal.num;
  const Poly& dn = g_nominal.den;
  const Poly& nq = q_tf.num;
  const Poly& dq = q_tf.den;

  // Common closed-loop denominator over dn*dg*dq:
  //   P = nn (dq - nq) dg + ng nq dn
  const Poly one_minus_q = poly_add(dq, poly_scale(nq, -1.0));
  const Poly p = poly_add(poly_mul(poly_mul(nn, one_minus_q), dg),
                          poly_mul(poly_mul(ng, nq), dn));
  if (poly_trim(p).cwiseAbs().maxCoeff() == 0.0)
    throw std::runtime_error("DOB loop: singular closed-loop denominator");

  RationalTF t_un(poly_mul(poly_mul(nn, ng), dq), p);
  RationalTF t_d(poly_mul(poly_mul(nn, one_minus_q), dg), p);
  RationalTF t_n(poly_scale(poly_mul(poly_mul(ng, nq), dn), -1.0), p);
  return {t_un, t_d, t_n};
}

}  // namespace maneuver
