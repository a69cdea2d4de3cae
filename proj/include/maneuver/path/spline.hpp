#pragma once

#include <Eigen/Dense>
#include <vector>

#include "maneuver/path/course.hpp"
#include "maneuver/path/waypoints.hpp"

namespace maneuver {

// Segmented polynomial path. Coefficient row i holds the ascending-power
// coefficients of segment i over its local parameter lambda in [0,1].
struct PathSpline {
  int segments = 0;    // m
  int order = 0;       // p
  int continuity = 0;  // q
  Eigen::MatrixXd coeffs_x;  // m x (p+1)
  Eigen::MatrixXd coeffs_y;  // m x (p+1)
};

struct FitReport {
  double objective_x = 0.0;
  double objective_y = 0.0;
  double constraint_residual_inf = 0.0;  // on the column-scaled system
  double kkt_condition = 0.0;
  bool used_nullspace_fallback = false;
};

// Signed curvature against arc length.
struct CurvatureProfile {
  struct Sample {
    double s;
    double kappa;
  };
  std::vector<Sample> samples;
  double total_length = 0.0;
  Direction direction = Direction::forward;

  double kappa_at(double s) const;  // linear interpolation, clamped
};

// Continuity-constraint matrix of the segmented fit: (q+1)(m-1) rows,
// (p+1)m columns, block band [A_i B_i] per interior joint.
Eigen::MatrixXd build_constraint_matrix(int m, int p, int q);

// Equality-constrained least squares fit of per-segment polynomials to the
// waypoints, X and Y coordinates independently. Lambda within a segment is
// assigned by normalized cumulative chord length. Solves the KKT system of
// the column-scaled problem directly, falling back to a nullspace method
// when the KKT condition estimate exceeds 1e12.
PathSpline fit_path(const WaypointSet& wps, int p, int q,
                    FitReport* report = nullptr);

// order-th lambda-derivative of (x, y) on a segment (0-based), lambda in
// [0,1]. No extrapolation.
Eigen::Vector2d eval_path(const PathSpline& spline, int segment,
                          double lambda, int order);

// Signed planar curvature, positive for counter-clockwise turning.
double curvature(const PathSpline& spline, int segment, double lambda);

// Samples curvature uniformly in the concatenated segment parameter; arc
// length accumulated by Gauss-Legendre quadrature of the parametric speed.
CurvatureProfile curvature_profile(const PathSpline& spline, int n_samples);

// Profile for traversing the same geometry in reverse: s mirrored, kappa
// negated.
CurvatureProfile reverse_profile(const CurvatureProfile& prof);

}  // namespace maneuver
