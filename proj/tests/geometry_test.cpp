#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maneuver/app/pipeline.hpp"
#include "maneuver/path/segmentation.hpp"
#include "maneuver/path/spline.hpp"

using namespace maneuver;

namespace {

PlanArtifacts paper_plan() {
  static const PlanArtifacts plan = run_plan(config_from_preset("paper"));
  return plan;
}

}  // namespace

TEST_CASE("eval derivatives agree with central differences") {
  const PathSpline spline = paper_plan().spline;
  const double h = 1e-5;
  for (int seg = 0; seg < spline.segments; ++seg)
    for (double lam : {0.1, 0.35, 0.6, 0.9}) {
      const Eigen::Vector2d d1 = eval_path(spline, seg, lam, 1);
      const Eigen::Vector2d fd1 = (eval_path(spline, seg, lam + h, 0) -
                                   eval_path(spline, seg, lam - h, 0)) /
                                  (2.0 * h);
      CHECK((d1 - fd1).norm() < 1e-6 * (1.0 + d1.norm()));

      const Eigen::Vector2d d2 = eval_path(spline, seg, lam, 2);
      const Eigen::Vector2d fd2 = (eval_path(spline, seg, lam + h, 0) -
                                   2.0 * eval_path(spline, seg, lam, 0) +
                                   eval_path(spline, seg, lam - h, 0)) /
                                  (h * h);
      CHECK((d2 - fd2).norm() < 1e-4 * (1.0 + d2.norm()));
    }
}

TEST_CASE("eval argument validation") {
  const PathSpline spline = paper_plan().spline;
  CHECK_THROWS_AS(eval_path(spline, -1, 0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(eval_path(spline, spline.segments, 0.5, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_path(spline, 0, 1.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(eval_path(spline, 0, 0.5, spline.order + 1),
                  std::invalid_argument);
}

TEST_CASE("fitted circle arc recovers 1/R curvature with sign") {
  const double r = 4.0;
  WaypointSet ccw;
  // Two segments sharing the joint sample, so the equality constraint at
  // the joint is consistent with the data.
  auto arc_point = [&](int i) {
    const double a = 0.03 * i;  // shallow arc, counter-clockwise
    return Eigen::Vector2d(r * std::sin(a), r * (1.0 - std::cos(a)));
  };
  for (int i = 0; i <= 12; ++i) ccw.points.push_back(arc_point(i));
  for (int i = 12; i <= 24; ++i) ccw.points.push_back(arc_point(i));
  ccw.segment_boundaries = {13};
  const PathSpline spline = fit_path(ccw, 5, 2, nullptr);
  for (double lam : {0.2, 0.5, 0.8}) {
    CHECK(curvature(spline, 0, lam) == doctest::Approx(1.0 / r).epsilon(1e-3));
    CHECK(curvature(spline, 1, lam) == doctest::Approx(1.0 / r).epsilon(1e-3));
  }

  // Mirror in y turns left into right: curvature flips sign.
  WaypointSet cw = ccw;
  for (auto& p : cw.points) p.y() = -p.y();
  const PathSpline mirrored = fit_path(cw, 5, 2, nullptr);
  CHECK(curvature(mirrored, 0, 0.5) ==
        doctest::Approx(-1.0 / r).epsilon(1e-3));
}

TEST_CASE("curvature profile matches a heading-rate oracle") {
  const PlanArtifacts plan = paper_plan();
  const auto& prof = plan.curvature_forward;
  REQUIRE(prof.samples.size() > 100);
  // d(theta)/ds from the tangent angle between adjacent profile samples.
  double worst = 0.0;
  for (size_t i = 1; i + 1 < prof.samples.size(); i += 7) {
    const double u_prev = static_cast<double>(plan.spline.segments) * (i - 1) /
                          (prof.samples.size() - 1);
    const double u_next = static_cast<double>(plan.spline.segments) * (i + 1) /
                          (prof.samples.size() - 1);
    auto tangent = [&](double u) {
      const int seg =
          std::min(static_cast<int>(u), plan.spline.segments - 1);
      const Eigen::Vector2d d = eval_path(plan.spline, seg, u - seg, 1);
      return std::atan2(d.y(), d.x());
    };
    double dtheta = tangent(u_next) - tangent(u_prev);
    while (dtheta > std::numbers::pi) dtheta -= 2 * std::numbers::pi;
    while (dtheta < -std::numbers::pi) dtheta += 2 * std::numbers::pi;
    const double ds = prof.samples[i + 1].s - prof.samples[i - 1].s;
    worst = std::max(worst,
                     std::abs(dtheta / ds - prof.samples[i].kappa));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("arc length of a straight fitted line is the chord length") {
  WaypointSet wps;
  for (int i = 0; i < 12; ++i) wps.points.emplace_back(0.5 * i, 0.25 * i);
  const PathSpline spline = fit_path(wps, 3, 1, nullptr);
  const CurvatureProfile prof = curvature_profile(spline, 200);
  CHECK(prof.total_length ==
        doctest::Approx(std::hypot(5.5, 2.75)).epsilon(1e-9));
  CHECK(prof.samples.front().s == 0.0);
  for (size_t i = 1; i < prof.samples.size(); ++i)
    CHECK(prof.samples[i].s > prof.samples[i - 1].s);
}

TEST_CASE("reverse profile mirrors arc length and negates curvature") {
  const CurvatureProfile fwd = paper_plan().curvature_forward;
  const CurvatureProfile bwd = reverse_profile(fwd);
  CHECK(bwd.direction == Direction::backward);
  CHECK(bwd.total_length == fwd.total_length);
  const size_t n = fwd.samples.size();
  for (size_t i = 0; i < n; i += 11) {
    const auto& f = fwd.samples[n - 1 - i];
    CHECK(bwd.samples[i].s ==
          doctest::Approx(fwd.total_length - f.s).epsilon(1e-12));
    CHECK(bwd.samples[i].kappa == doctest::Approx(-f.kappa));
  }
  CHECK_THROWS_AS(reverse_profile(bwd), std::invalid_argument);
}

TEST_CASE("segmentation leaves a straight course alone") {
  WaypointSet wps;
  for (int i = 0; i < 40; ++i) wps.points.emplace_back(0.2 * i, 0.0);
  const WaypointSet out = segment_waypoints(wps, 1, 4);
  CHECK(out.segment_count() == 1);
  CHECK(out.points.size() == wps.points.size());
}

TEST_CASE("two-turn S-curve splits with one turn per segment") {
  // Slope tanh(x-3) - tanh(x-9): one left turn near x=3, one right turn
  // near x=9; the split must separate the two lobes.
  WaypointSet wps;
  for (int i = 0; i < 80; ++i) {
    const double x = 0.15 * i;
    wps.points.emplace_back(
        x, std::log(std::cosh(x - 3.0)) - std::log(std::cosh(x - 9.0)));
  }
  const WaypointSet out = segment_waypoints(wps, 2, 5);
  REQUIRE(out.segment_count() == 2);

  // Finite-difference oracle: count sign-change regions of heading rate in
  // each segment.
  const std::vector<double> rate = heading_rate(out.points);
  double peak = 0.0;
  for (double r : rate) peak = std::max(peak, std::abs(r));
  for (int seg = 0; seg < 2; ++seg) {
    const auto [first, last] = out.segment_range(seg);
    int turns = 0, last_sign = 0;
    for (int i = std::max(first - 1, 0);
         i < std::min(last - 1, static_cast<int>(rate.size())); ++i) {
      const int s = std::abs(rate[i]) > 0.15 * peak
                        ? (rate[i] > 0 ? 1 : -1)
                        : 0;
      if (s != 0 && s != last_sign) {
        ++turns;
        last_sign = s;
      }
    }
    CHECK(turns <= 1);
  }
}

TEST_CASE("segmentation is deterministic and respects the point floor") {
  const RunConfig cfg = config_from_preset("paper");
  const auto anchors = cfg.effective_anchors();
  const WaypointSet dense = densify_waypoints(anchors, 200);
  const WaypointSet a = segment_waypoints(dense, 4, 7);
  const WaypointSet b = segment_waypoints(dense, 4, 7);
  CHECK(a.segment_boundaries == b.segment_boundaries);
  REQUIRE(a.segment_count() == 4);
  for (int seg = 0; seg < 4; ++seg) {
    const auto [first, last] = a.segment_range(seg);
    CHECK(last - first >= 7);
  }
  // The lane change happens mid-course; its separating boundaries must too.
  CHECK(a.segment_boundaries.front() > 20);
  CHECK(a.segment_boundaries.back() < 180);
}

TEST_CASE("segmentation rejects impossible requests") {
  WaypointSet wps;
  for (int i = 0; i < 20; ++i) wps.points.emplace_back(0.2 * i, 0.0);
  CHECK_THROWS_AS(segment_waypoints(wps, 8, 4), std::invalid_argument);
  CHECK_THROWS_AS(segment_waypoints(wps, 0, 4), std::invalid_argument);
}
