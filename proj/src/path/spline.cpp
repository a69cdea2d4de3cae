#include "maneuver/path/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maneuver/errors.hpp"

namespace maneuver {

namespace {

constexpr double kSpeedEps = 1e-9;  // degenerate-parametrization guard

// 7-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGaussN = 7;
constexpr double kGaussX[kGaussN] = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr double kGaussW[kGaussN] = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
    0.1294849661688697};

double factorial_ratio(int k, int j) {  // k! / (k-j)!
  double acc = 1.0;
  for (int i = 0; i < j; ++i) acc *= (k - i);
  return acc;
}

// Per-segment lambda values, normalized cumulative chord length.
std::vector<Eigen::VectorXd> assign_lambdas(const WaypointSet& wps) {
  const int m = wps.segment_count();
  std::vector<Eigen::VectorXd> lambdas(m);
  for (int seg = 0; seg < m; ++seg) {
    const auto [first, last] = wps.segment_range(seg);
    const int n = last - first;
    Eigen::VectorXd lam(n);
    lam[0] = 0.0;
    for (int i = 1; i < n; ++i)
      lam[i] = lam[i - 1] +
               (wps.points[first + i] - wps.points[first + i - 1]).norm();
    const double total = lam[n - 1];
    if (total <= 0.0)
      throw std::invalid_argument("fit: zero-length segment");
    lam /= total;
    lambdas[seg] = lam;
  }
  return lambdas;
}

double parametric_speed(const PathSpline& spline, int segment, double u) {
  return eval_path(spline, segment, u, 1).norm();
}

// Arc length of one segment over [u0, u1] by composite Gauss-Legendre.
double segment_arc_length(const PathSpline& spline, int segment, double u0,
                          double u1, int pieces = 8) {
  double acc = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double a = u0 + (u1 - u0) * p / pieces;
    const double b = u0 + (u1 - u0) * (p + 1) / pieces;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int g = 0; g < kGaussN; ++g)
      acc += kGaussW[g] * half *
             parametric_speed(spline, segment, mid + half * kGaussX[g]);
  }
  return acc;
}

}  // namespace

Eigen::MatrixXd build_constraint_matrix(int m, int p, int q) {
  if (q > p) throw std::invalid_argument("constraints: q must be <= p");
  if (m < 1) throw std::invalid_argument("constraints: m must be >= 1");
  const int rows = (q + 1) * (m - 1);
  const int cols = (p + 1) * m;
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(rows, cols);
  for (int i = 0; i < m - 1; ++i) {
    const int r0 = i * (q + 1);
    const int c0 = i * (p + 1);
    for (int j = 0; j <= q; ++j) {
      for (int k = j; k <= p; ++k)
        gamma(r0 + j, c0 + k) = factorial_ratio(k, j);  // A_i
      gamma(r0 + j, c0 + (p + 1) + j) = -factorial_ratio(j, j);  // B_i
    }
  }
  return gamma;
}

PathSpline fit_path(const WaypointSet& wps, int p, int q, FitReport* report) {
  if (q >= p) throw std::invalid_argument("fit: require q < p");
  const int m = wps.segment_count();
  const int n = static_cast<int>(wps.points.size());
  const int cols = (p + 1) * m;
  for (int seg = 0; seg < m; ++seg) {
    const auto [first, last] = wps.segment_range(seg);
    if (last - first < p + 1)
      throw std::invalid_argument("fit: segment under-determined");
  }

  const std::vector<Eigen::VectorXd> lambdas = assign_lambdas(wps);

  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, cols);
  Eigen::VectorXd rhs_x(n), rhs_y(n);
  for (int seg = 0; seg < m; ++seg) {
    const auto [first, last] = wps.segment_range(seg);
    for (int i = first; i < last; ++i) {
      const double lam = lambdas[seg][i - first];
      double pw = 1.0;
      for (int k = 0; k <= p; ++k) {
        phi(i, seg * (p + 1) + k) = pw;
        pw *= lam;
      }
      rhs_x[i] = wps.points[i].x();
      rhs_y[i] = wps.points[i].y();
    }
  }
  const Eigen::MatrixXd gamma = build_constraint_matrix(m, p, q);
  const int nc = static_cast<int>(gamma.rows());

  // Column scaling of the Vandermonde blocks.
  Eigen::VectorXd scale(cols);
  for (int c = 0; c < cols; ++c) {
    const double nrm = phi.col(c).norm();
    scale[c] = nrm > 0.0 ? nrm : 1.0;
  }
  const Eigen::MatrixXd phi_s = phi * scale.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd gamma_s = gamma * scale.cwiseInverse().asDiagonal();

  // KKT system [2 Phi'Phi, Gamma'; Gamma, 0].
  const int dim = cols + nc;
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(dim, dim);
  kkt.topLeftCorner(cols, cols) = 2.0 * phi_s.transpose() * phi_s;
  kkt.topRightCorner(cols, nc) = gamma_s.transpose();
  kkt.bottomLeftCorner(nc, cols) = gamma_s;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(kkt, Eigen::ComputeThinU |
                                                 Eigen::ComputeThinV);
  const double cond =
      svd.singularValues()(0) / svd.singularValues()(dim - 1);

  Eigen::VectorXd theta_x(cols), theta_y(cols);
  bool fallback = false;
  if (std::isfinite(cond) && cond < 1e12) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
    b.head(cols) = 2.0 * phi_s.transpose() * rhs_x;
    theta_x = svd.solve(b).head(cols);
    b.head(cols) = 2.0 * phi_s.transpose() * rhs_y;
    theta_y = svd.solve(b).head(cols);
  } else {
    // Nullspace method: restrict the least squares to ker(Gamma).
    fallback = true;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gamma_s);
    const Eigen::MatrixXd z = lu.kernel();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(phi_s * z);
    if (qr.rank() < z.cols())
      throw SingularFitError("fit: rank-deficient reduced system", cond);
    theta_x = z * qr.solve(rhs_x);
    theta_y = z * qr.solve(rhs_y);
  }

  const double resid =
      std::max((gamma_s * theta_x).lpNorm<Eigen::Infinity>(),
               (gamma_s * theta_y).lpNorm<Eigen::Infinity>());
  if (!theta_x.allFinite() || !theta_y.allFinite())
    throw SingularFitError("fit: non-finite solution", cond);

  if (report) {
    report->objective_x = (phi_s * theta_x - rhs_x).squaredNorm();
    report->objective_y = (phi_s * theta_y - rhs_y).squaredNorm();
    report->constraint_residual_inf = resid;
    report->kkt_condition = cond;
    report->used_nullspace_fallback = fallback;
  }

  // Undo the column scaling.
  theta_x = scale.cwiseInverse().asDiagonal() * theta_x;
  theta_y = scale.cwiseInverse().asDiagonal() * theta_y;

  PathSpline spline;
  spline.segments = m;
  spline.order = p;
  spline.continuity = q;
  spline.coeffs_x.resize(m, p + 1);
  spline.coeffs_y.resize(m, p + 1);
  for (int seg = 0; seg < m; ++seg)
    for (int k = 0; k <= p; ++k) {
      spline.coeffs_x(seg, k) = theta_x[seg * (p + 1) + k];
      spline.coeffs_y(seg, k) = theta_y[seg * (p + 1) + k];
    }
  return spline;
}

Eigen::Vector2d eval_path(const PathSpline& spline, int segment, double lambda,
                          int order) {
  if (segment < 0 || segment >= spline.segments)
    throw std::invalid_argument("eval: segment out of range");
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("eval: lambda outside [0,1]");
  if (order < 0 || order > spline.order)
    throw std::invalid_argument("eval: bad derivative order");
  const int p = spline.order;
  // Horner on the order-th derivative coefficients.
  double x = 0.0, y = 0.0;
  for (int k = p; k >= order; --k) {
    double f = 1.0;
    for (int i = 0; i < order; ++i) f *= (k - i);
    x = x * lambda + f * spline.coeffs_x(segment, k);
    y = y * lambda + f * spline.coeffs_y(segment, k);
  }
  return {x, y};
}

double curvature(const PathSpline& spline, int segment, double lambda) {
  const Eigen::Vector2d d1 = eval_path(spline, segment, lambda, 1);
  const Eigen::Vector2d d2 = eval_path(spline, segment, lambda, 2);
  const double speed2 = d1.squaredNorm();
  if (speed2 <= kSpeedEps * kSpeedEps)
    throw std::domain_error("curvature: degenerate parametrization");
  return (d1.x() * d2.y() - d1.y() * d2.x()) / (speed2 * std::sqrt(speed2));
}

CurvatureProfile curvature_profile(const PathSpline& spline, int n_samples) {
  if (n_samples < 2)
    throw std::invalid_argument("profile: need at least 2 samples");
  const int m = spline.segments;
  CurvatureProfile prof;
  prof.samples.reserve(n_samples);

  // Uniform samples of the concatenated parameter u in [0, m]; arc length
  // accumulated by quadrature between consecutive samples, split at joints.
  double s = 0.0;
  double prev_u = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double u = static_cast<double>(m) * i / (n_samples - 1);
    if (i > 0) {
      double a = prev_u;
      while (a < u) {
        const int seg = std::min(static_cast<int>(a), m - 1);
        const double b = std::min(u, static_cast<double>(seg + 1));
        s += segment_arc_length(spline, seg, a - seg, b - seg);
        a = b;
      }
    }
    const int seg = std::min(static_cast<int>(u), m - 1);
    prof.samples.push_back({s, curvature(spline, seg, u - seg)});
    prev_u = u;
  }
  prof.total_length = s;
  prof.direction = Direction::forward;
  return prof;
}

CurvatureProfile reverse_profile(const CurvatureProfile& prof) {
  if (prof.direction != Direction::forward)
    throw std::invalid_argument("reverse_profile: profile already backward");
  CurvatureProfile out;
  out.total_length = prof.total_length;
  out.direction = Direction::backward;
  out.samples.resize(prof.samples.size());
  const size_t n = prof.samples.size();
  for (size_t i = 0; i < n; ++i) {
    const auto& src = prof.samples[n - 1 - i];
    out.samples[i] = {prof.total_length - src.s, -src.kappa};
  }
  return out;
}

double CurvatureProfile::kappa_at(double s) const {
  if (samples.empty()) return 0.0;
  if (s <= samples.front().s) return samples.front().kappa;
  if (s >= samples.back().s) return samples.back().kappa;
  auto it = std::lower_bound(
      samples.begin(), samples.end(), s,
      [](const Sample& a, double val) { return a.s < val; });
  const Sample& hi = *it;
  const Sample& lo = *(it - 1);
  const double w = (s - lo.s) / (hi.s - lo.s);
  return lo.kappa + w * (hi.kappa - lo.kappa);
}

}  // namespace maneuver
