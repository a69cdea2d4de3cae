#include <doctest.h>

#include <cmath>
#include <vector>

#include "maneuver/path/akima.hpp"
#include "maneuver/path/course.hpp"

using namespace maneuver;

TEST_CASE("interpolant passes through its knots") {
  std::vector<double> xs, ys;
  for (int i = 0; i < 8; ++i) {
    const double x = 0.3 * i;
    xs.push_back(x);
    ys.push_back(x * x);  // parabola samples
  }
  MakimaInterpolant f(xs, ys);
  for (size_t i = 0; i < xs.size(); ++i)
    CHECK(f(xs[i]) == doctest::Approx(ys[i]).epsilon(1e-14));
}

TEST_CASE("collinear data stays exactly flat") {
  MakimaInterpolant f({0.0, 1.0, 2.0, 3.5, 5.0}, {2.0, 2.0, 2.0, 2.0, 2.0});
  for (int i = 0; i <= 100; ++i) {
    const double t = 5.0 * i / 100.0;
    CHECK(std::abs(f(t) - 2.0) < 1e-13);
    CHECK(std::abs(f.derivative(t)) < 1e-13);
  }
}

TEST_CASE("no overshoot across a flat run bordered by a step") {
  // Classic Akima selling point: the flat plateau must not ripple.
  MakimaInterpolant f({0, 1, 2, 3, 4, 5, 6}, {0, 0, 0, 0, 1, 1, 1});
  for (int i = 0; i <= 60; ++i) {
    const double t = 3.0 * i / 60.0;  // plateau region only
    CHECK(std::abs(f(t)) < 1e-12);
  }
}

TEST_CASE("matches the reference modified-Akima slope rule") {
  // Golden values from an independent reference implementation evaluated
  // on a non-uniform knot set.
  MakimaInterpolant f({0.0, 1.0, 2.5, 3.0, 4.5, 6.0, 7.0},
                      {0.0, 0.8, -0.4, 1.2, 1.1, -0.3, 0.5});
  const double golden[15][2] = {
      {0, 0},
      {0.5, 0.52619047619047621},
      {1, 0.80000000000000004},
      {1.5, 0.50957041423362659},
      {2, -0.11101790169147696},
      {2.5, -0.40000000000000002},
      {3, 1.2},
      {3.5, 1.3879133399654788},
      {4, 1.3492051345276865},
      {4.5, 1.1000000000000001},
      {5, 0.6303757846471415},
      {5.5, 0.082359609495287922},
      {6, -0.29999999999999999},
      {6.5, -0.11079545454545453},
      {7, 0.50000000000000022}};
  for (const auto& [t, v] : golden)
    CHECK(f(t) == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("derivative agrees with a central difference") {
  MakimaInterpolant f({0.0, 0.7, 1.1, 2.0, 2.9, 4.0},
                      {1.0, -0.2, 0.4, 0.3, 1.5, 0.9});
  const double h = 1e-6;
  for (double t : {0.2, 0.9, 1.6, 2.4, 3.7}) {
    const double fd = (f(t + h) - f(t - h)) / (2.0 * h);
    CHECK(f.derivative(t) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("interpolant rejects bad knot sets") {
  CHECK_THROWS_AS(MakimaInterpolant({0.0, 1.0}, {0.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MakimaInterpolant({0.0, 1.0, 1.0, 2.0}, {0, 1, 2, 3}),
                  std::invalid_argument);
}

TEST_CASE("densify keeps all anchors and the requested count") {
  std::vector<Eigen::Vector2d> anchors = {
      {0.0, 0.0}, {1.0, 0.2}, {2.5, -0.1}, {4.0, 0.6}, {5.0, 0.5}};
  const WaypointSet dense = densify_waypoints(anchors, 57);
  CHECK(dense.points.size() == 57);
  for (const auto& a : anchors) {
    bool found = false;
    for (const auto& p : dense.points)
      if ((p - a).norm() < 1e-12) found = true;
    CHECK(found);
  }
  // Traversal order must survive densification.
  for (size_t i = 1; i < dense.points.size(); ++i)
    CHECK(dense.points[i].x() > dense.points[i - 1].x());
}

TEST_CASE("densified collinear anchors stay on the line") {
  std::vector<Eigen::Vector2d> anchors = {{0, 0}, {1, 0}, {2, 0}};
  const WaypointSet dense = densify_waypoints(anchors, 50);
  CHECK(dense.points.size() == 50);
  for (const auto& p : dense.points) CHECK(std::abs(p.y()) < 1e-12);
}

TEST_CASE("densify input validation") {
  std::vector<Eigen::Vector2d> two = {{0, 0}, {1, 1}};
  CHECK_THROWS_AS(densify_waypoints(two, 10), std::invalid_argument);
  std::vector<Eigen::Vector2d> ok = {{0, 0}, {1, 1}, {2, 0}};
  CHECK_THROWS_AS(densify_waypoints(ok, 2), std::invalid_argument);
}

TEST_CASE("default course anchors make a single left lane change") {
  const CourseGeometry course = default_course(LaneChangeSide::left);
  const auto anchors = course_anchors(course);
  REQUIRE(anchors.size() >= 3);
  for (size_t i = 1; i < anchors.size(); ++i) {
    CHECK(anchors[i].x() > anchors[i - 1].x());  // monotone progression
    CHECK(anchors[i].y() >= anchors[i - 1].y() - 1e-12);  // no S wiggle back
  }
  CHECK(anchors.front().y() == doctest::Approx(0.0));
  CHECK(anchors.back().x() == doctest::Approx(15.2386));
  CHECK(anchors.back().y() == doctest::Approx(1.3716));
}

TEST_CASE("right-side course mirrors the left one in y") {
  const auto left = course_anchors(default_course(LaneChangeSide::left));
  const auto right = course_anchors(default_course(LaneChangeSide::right));
  REQUIRE(left.size() == right.size());
  for (size_t i = 0; i < left.size(); ++i) {
    CHECK(right[i].x() == doctest::Approx(left[i].x()));
    CHECK(right[i].y() == doctest::Approx(-left[i].y()));
  }
}
