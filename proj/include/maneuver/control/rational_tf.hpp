#pragma once

#include <Eigen/Dense>
#include <complex>

namespace maneuver {

// Polynomial in s, coefficients in descending powers. poly[0] is the
// leading coefficient.
using Poly = Eigen::VectorXd;

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double k);
// Strips leading coefficients whose magnitude is <= tol * max|coeff|.
Poly poly_trim(const Poly& a, double tol = 1e-14);
std::complex<double> poly_eval(const Poly& a, std::complex<double> s);
// Roots via balanced companion-matrix eigenvalues. Degree 0 -> empty.
Eigen::VectorXcd poly_roots(const Poly& a);

// Continuous-time SISO transfer function, numerator/denominator in
// descending powers of s.
struct RationalTF {
  Poly num;
  Poly den;

  RationalTF() = default;
  RationalTF(Poly n, Poly d);

  static RationalTF constant(double k);

  // Makes the denominator monic.
  void normalize();

  std::complex<double> eval(std::complex<double> s) const;
  std::complex<double> freq(double omega) const { return eval({0.0, omega}); }

  int num_degree() const { return static_cast<int>(num.size()) - 1; }
  int den_degree() const { return static_cast<int>(den.size()) - 1; }
  int relative_degree() const { return den_degree() - num_degree(); }
  bool proper() const { return num_degree() <= den_degree(); }

  Eigen::VectorXcd poles() const { return poly_roots(den); }
  Eigen::VectorXcd zeros() const { return poly_roots(num); }
};

RationalTF operator*(const RationalTF& a, const RationalTF& b);
RationalTF operator*(double k, const RationalTF& a);
RationalTF operator+(const RationalTF& a, const RationalTF& b);

}  // namespace maneuver
