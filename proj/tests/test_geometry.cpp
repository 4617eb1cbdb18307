#include <algorithm>
#include <random>

#include "corda/geometry.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace corda;
using oracle::on_unit;

TEST_CASE("smallest enclosing circle agrees with the brute-force oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(2, 9);
  for (int trial = 0; trial < 400; ++trial) {
    auto pts = oracle::disk(rng, size(rng));
    const Circle got = smallest_enclosing_circle(pts);
    const Circle want = oracle::brute_force_sec(pts);
    CHECK(distance(got.center, want.center) <= 1e-9);
    CHECK(std::abs(got.radius - want.radius) <= 1e-9);
  }
}

TEST_CASE("smallest enclosing circle small cases") {
  SUBCASE("two points give the diameter circle") {
    std::vector<Point> pts{{0, 0}, {2, 0}};
    const Circle c = smallest_enclosing_circle(pts);
    CHECK(c.center.x == doctest::Approx(1.0));
    CHECK(c.center.y == doctest::Approx(0.0));
    CHECK(c.radius == doctest::Approx(1.0));
  }
  SUBCASE("equilateral triangle gives its circumcircle") {
    std::vector<Point> pts{on_unit(90), on_unit(210), on_unit(330)};
    const Circle c = smallest_enclosing_circle(pts);
    CHECK(c.radius == doctest::Approx(1.0));
    CHECK(c.center.norm() <= 1e-12);
  }
  SUBCASE("obtuse triangle uses its longest side") {
    std::vector<Point> pts{{-1, 0}, {1, 0}, {0, 0.2}};
    const Circle c = smallest_enclosing_circle(pts);
    CHECK(c.radius == doctest::Approx(1.0));
    CHECK(c.center.norm() <= 1e-12);
  }
  SUBCASE("errors") {
    std::vector<Point> one{{0, 0}};
    CHECK_THROWS_AS(smallest_enclosing_circle(one), Error);
    try {
      smallest_enclosing_circle(one);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::FewerThanTwoPoints);
    }
    std::vector<Point> dup{{0, 0}, {1, 1}, {0, 0}};
    try {
      smallest_enclosing_circle(dup);
      FAIL("duplicates accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DuplicatePoints);
    }
  }
}

TEST_CASE("smallest enclosing circle structural properties") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> size(2, 8);
  for (int trial = 0; trial < 300; ++trial) {
    auto pts = oracle::disk(rng, size(rng));
    const Circle c = smallest_enclosing_circle(pts);
    const double eps = 1e-9 * c.radius;

    std::vector<Point> boundary;
    for (const Point& p : pts) {
      CHECK(c.contains(p, eps));
      if (c.on_boundary(p, eps)) boundary.push_back(p);
    }
    CHECK(boundary.size() >= 2);
    if (boundary.size() == 2) {
      CHECK(distance(midpoint(boundary[0], boundary[1]), c.center) <= 1e-9);
    }

    // Permutation invariance is bitwise.
    auto shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const Circle c2 = smallest_enclosing_circle(shuffled);
    CHECK(c2.center == c.center);
    CHECK(c2.radius == c.radius);

    // Adding an interior point changes nothing.
    auto more = pts;
    more.push_back(c.center + Point{0.3 * c.radius, -0.2 * c.radius});
    CHECK(same_circle(smallest_enclosing_circle(more), c, eps));

    // No two adjacent boundary points are more than half a turn apart.
    if (boundary.size() >= 2) {
      for (const Point& b : boundary) {
        const Point next = adjacent_on_circle(b, c, boundary, Direction::Clockwise);
        CHECK(clockwise_angle(b, c.center, next).value() <= 180.0 + 1e-7);
      }
    }
  }
}

TEST_CASE("clockwise angle agrees with an independent oracle") {
  CHECK(clockwise_angle({1, 0}, {0, 0}, {0, -1}).value() == doctest::Approx(90.0));
  CHECK(clockwise_angle({1, 0}, {0, 0}, {0, 1}).value() == doctest::Approx(270.0));
  CHECK(clockwise_angle({1, 0}, {0, 0}, {-1, 0}).value() == doctest::Approx(180.0));
  CHECK(clockwise_angle({1, 0}, {0, 0}, {2, 0}).value() == 0.0);
  CHECK(counterclockwise_angle({1, 0}, {0, 0}, {0, 1}).value() == doctest::Approx(90.0));

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    auto pts = oracle::disk(rng, 3);
    const double got = clockwise_angle(pts[0], pts[1], pts[2]).value();
    const double want = oracle::cw_angle(pts[0], pts[1], pts[2]);
    const double diff = std::abs(got - want);
    CHECK(std::min(diff, 360.0 - diff) <= 1e-6);
    CHECK(got >= 0.0);
    CHECK(got < 360.0);
    const double sum = got + counterclockwise_angle(pts[0], pts[1], pts[2]).value();
    CHECK((std::abs(sum - 360.0) <= 1e-9 || std::abs(sum) <= 1e-9));
  }

  try {
    clockwise_angle({0, 0}, {0, 0}, {1, 0});
    FAIL("degenerate ray accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateRay);
  }
}

TEST_CASE("criticality matches removal by brute force") {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> size(3, 8);
  for (int trial = 0; trial < 200; ++trial) {
    auto pts = oracle::disk(rng, size(rng));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(is_critical(pts[i], pts) == oracle::critical(pts, i, 1e-9));
    }
  }

  SUBCASE("square: no vertex is critical") {
    std::vector<Point> sq{on_unit(0), on_unit(90), on_unit(180), on_unit(270)};
    for (const Point& p : sq) CHECK_FALSE(is_critical(p, sq));
  }
  SUBCASE("diameter endpoints are critical") {
    std::vector<Point> pts{{-1, 0}, {1, 0}, {0, 0.5}, {0.2, -0.3}};
    CHECK(is_critical(pts[0], pts));
    CHECK(is_critical(pts[1], pts));
    CHECK_FALSE(is_critical(pts[2], pts));
  }
  SUBCASE("errors") {
    std::vector<Point> two{{0, 0}, {1, 0}};
    CHECK_THROWS_AS(is_critical(two[0], two), Error);
    std::vector<Point> pts{{-1, 0}, {1, 0}, {0, 0.5}};
    try {
      is_critical({5, 5}, pts);
      FAIL("foreign point accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PointNotInConfiguration);
    }
  }
}

TEST_CASE("four or more cocircular points always include a non-critical one") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> angle(0.0, 360.0);
  std::uniform_int_distribution<int> size(4, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back(on_unit(angle(rng), 2.0));
    const bool some = std::any_of(pts.begin(), pts.end(), [&](Point p) { return !is_critical(p, pts); });
    CHECK(some);
  }
}

TEST_CASE("adjacent point on a circle matches sorting by angle") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> angle(0.0, 360.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(on_unit(angle(rng)));
    pts.push_back({0.1, 0.2});  // off the circle, ignored
    const Circle c{{0, 0}, 1.0};
    for (int i = 0; i < 6; ++i) {
      std::vector<std::pair<double, int>> order;
      for (int j = 0; j < 6; ++j) {
        if (j != i) order.emplace_back(oracle::cw_angle(pts[i], c.center, pts[j]), j);
      }
      std::sort(order.begin(), order.end());
      CHECK(adjacent_on_circle(pts[i], c, pts, Direction::Clockwise) == pts[order.front().second]);
      CHECK(adjacent_on_circle(pts[i], c, pts, Direction::Counterclockwise) == pts[order.back().second]);
    }
  }
  const Circle c{{0, 0}, 1.0};
  std::vector<Point> lonely{on_unit(10), {0.2, 0.1}};
  try {
    adjacent_on_circle(lonely[0], c, lonely, Direction::Clockwise);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoOtherPointOnCircle);
  }
  try {
    adjacent_on_circle({0.5, 0}, c, lonely, Direction::Clockwise);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOnCircle);
  }
}

TEST_CASE("concentric enclosing circles match distinct center distances") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto pts = oracle::disk(rng, 7);
    const auto circles = concentric_enclosing_circles(pts);
    const Circle sec = smallest_enclosing_circle(pts);
    const auto radii = oracle::distinct_radii(pts, sec.center, 1e-9 * sec.radius);
    CHECK(same_circle(circles.front(), sec, 0.0));
    // The first oracle radius is the enclosing circle itself.
    REQUIRE(circles.size() == radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) CHECK(circles[i].radius == doctest::Approx(radii[i]));
    for (std::size_t i = 1; i < circles.size(); ++i) CHECK(circles[i].radius < circles[i - 1].radius);
  }
  SUBCASE("a point at the center spans no circle") {
    std::vector<Point> pts{on_unit(0), on_unit(120), on_unit(240), {0, 0}, on_unit(30, 0.5)};
    const auto circles = concentric_enclosing_circles(pts);
    REQUIRE(circles.size() == 2);
    CHECK(circles[1].radius == doctest::Approx(0.5));
  }
}

TEST_CASE("clockwise arc membership") {
  const Circle c{{0, 0}, 1.0};
  const Point from = on_unit(90), to = on_unit(0);
  CHECK(in_arc(on_unit(45), from, to, c));
  CHECK(in_arc(to, from, to, c));
  CHECK_FALSE(in_arc(from, from, to, c));
  CHECK_FALSE(in_arc(on_unit(180), from, to, c));
  CHECK(in_arc(on_unit(180), from, from, c));  // whole circle minus the start
  CHECK_THROWS_AS(in_arc({0.5, 0}, from, to, c), Error);
}

TEST_CASE("tolerance validation and rotation helper") {
  CHECK_THROWS_AS(Tolerance(0.0), Error);
  CHECK_THROWS_AS(Tolerance(0.5), Error);
  CHECK(Tolerance(1e-6).eps(2.0) == doctest::Approx(2e-6));
  CHECK(Tolerance().eps_angle() == doctest::Approx(3.6e-7));
  const Point r = rotate_clockwise({1, 0}, {0, 0}, 90.0);
  CHECK(r.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.y == doctest::Approx(-1.0));
  CHECK(AngleDeg(-90.0).value() == doctest::Approx(270.0));
  CHECK(AngleDeg(720.0).value() == 0.0);
}
