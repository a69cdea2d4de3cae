#include "maneuver/control/rational_tf.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace maneuver {

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.size() == 0 || b.size() == 0) return Poly();
  Poly out = Poly::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
  const Eigen::Index n = std::max(a.size(), b.size());
  Poly out = Poly::Zero(n);
  out.tail(a.size()) += a;
  out.tail(b.size()) += b;
  return out;
}

Poly poly_scale(const Poly& a, double k) { return a * k; }

Poly poly_trim(const Poly& a, double tol) {
  if (a.size() == 0) return a;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return Poly::Zero(1);
  Eigen::Index lead = 0;
  while (lead < a.size() - 1 && std::abs(a[lead]) <= tol * scale) ++lead;
  return a.tail(a.size() - lead).eval();
}

std::complex<double> poly_eval(const Poly& a, std::complex<double> s) {
  std::complex<double> acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc = acc * s + a[i];
  return acc;
}

Eigen::VectorXcd poly_roots(const Poly& raw) {
  const Poly a = poly_trim(raw);
  const int deg = static_cast<int>(a.size()) - 1;
  if (deg <= 0) return Eigen::VectorXcd();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  companion.bottomLeftCorner(deg - 1, deg - 1).setIdentity();
  for (int i = 0; i < deg; ++i) companion(0, i) = -a[i + 1] / a[0];

  // One sweep of diagonal power-of-two balancing keeps the eigensolver
  // happy when coefficient magnitudes span many decades.
  Eigen::VectorXd d = Eigen::VectorXd::Ones(deg);
  for (int iter = 0; iter < 10; ++iter) {
    bool converged = true;
    for (int i = 0; i < deg; ++i) {
      double r = companion.row(i).cwiseAbs().sum() - std::abs(companion(i, i));
      double c = companion.col(i).cwiseAbs().sum() - std::abs(companion(i, i));
      if (r == 0.0 || c == 0.0) continue;
      double f = 1.0;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c > r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if (f != 1.0) {
        converged = false;
        d[i] *= f;
        companion.row(i) /= f;
        companion.col(i) *= f;
      }
    }
    if (converged) break;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  return es.eigenvalues();
}

RationalTF::RationalTF(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
  if (den.size() == 0 || poly_trim(den).cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("RationalTF: zero denominator");
  num = poly_trim(num);
  den = poly_trim(den);
}

RationalTF RationalTF::constant(double k) {
  Poly n(1), d(1);
  n << k;
  d << 1.0;
  return RationalTF(n, d);
}

void RationalTF::normalize() {
  const double lead = den[0];
  den /= lead;
  num /= lead;
}

std::complex<double> RationalTF::eval(std::complex<double> s) const {
  return poly_eval(num, s) / poly_eval(den, s);
}

RationalTF operator*(const RationalTF& a, const RationalTF& b) {
  return RationalTF(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
}

RationalTF operator*(double k, const RationalTF& a) {
  return RationalTF(poly_scale(a.num, k), a.den);
}

RationalTF operator+(const RationalTF& a, const RationalTF& b) {
  return RationalTF(poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)),
                    poly_mul(a.den, b.den));
}

}  // namespace maneuver
