#include "corda/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

namespace corda {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FewerThanTwoPoints: return "FewerThanTwoPoints";
    case ErrorKind::DuplicatePoints: return "DuplicatePoints";
    case ErrorKind::PointNotInConfiguration: return "PointNotInConfiguration";
    case ErrorKind::DegenerateRay: return "DegenerateRay";
    case ErrorKind::NotOnCircle: return "NotOnCircle";
    case ErrorKind::NoOtherPointOnCircle: return "NoOtherPointOnCircle";
    case ErrorKind::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorKind::InvalidPattern: return "InvalidPattern";
    case ErrorKind::NotAgreementConfiguration: return "NotAgreementConfiguration";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::StatusNotMaximal: return "StatusNotMaximal";
    case ErrorKind::NoPartialPattern: return "NoPartialPattern";
    case ErrorKind::NoExtraRobotOffCircle: return "NoExtraRobotOffCircle";
    case ErrorKind::NoFreePosition: return "NoFreePosition";
    case ErrorKind::NoNonCriticalRobot: return "NoNonCriticalRobot";
    case ErrorKind::SymmetricConfiguration: return "SymmetricConfiguration";
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
  }
  return "Unknown";
}

AngleDeg::AngleDeg(double degrees) {
  double v = std::fmod(degrees, 360.0);
  if (v < 0.0) v += 360.0;
  if (v >= 360.0) v = 0.0;
  value_ = v;
}

Tolerance::Tolerance(double rel) : eps_rel(rel) {
  if (!(rel > 0.0 && rel < 1e-3)) {
    throw Error(ErrorKind::InvalidTolerance, "eps_rel must lie in (0, 1e-3), got " + std::to_string(rel));
  }
}

Point rotate_clockwise(Point p, Point c, double degrees) {
  const double t = deg_to_rad(degrees);
  const double cs = std::cos(t);
  const double sn = std::sin(t);
  const Point d = p - c;
  return {c.x + d.x * cs + d.y * sn, c.y - d.x * sn + d.y * cs};
}

Circle circle_from_diameter(Point a, Point b) {
  const Point c = midpoint(a, b);
  return {c, std::max(distance(c, a), distance(c, b))};
}

Circle circumcircle(Point a, Point b, Point c) {
  // Translate to a's frame for precision.
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * ab.cross(ac);
  if (d == 0.0) return {Point{}, -1.0};
  const double b2 = ab.dot(ab);
  const double c2 = ac.dot(ac);
  const Point off{(ac.y * b2 - ab.y * c2) / d, (ab.x * c2 - ac.x * b2) / d};
  const Point center = a + off;
  const double r = std::max({distance(center, a), distance(center, b), distance(center, c)});
  return {center, r};
}

namespace {

constexpr double kContainSlack = 1.0 + 1e-14;

bool sec_contains(const Circle& c, Point p) {
  return c.radius >= 0.0 && distance(c.center, p) <= c.radius * kContainSlack;
}

Circle sec_two_points(std::span<const Point> pts, std::size_t end, Point p, Point q) {
  const Circle circ = circle_from_diameter(p, q);
  Circle left{Point{}, -1.0};
  Circle right{Point{}, -1.0};
  const Point pq = q - p;
  for (std::size_t i = 0; i < end; ++i) {
    const Point r = pts[i];
    if (sec_contains(circ, r)) continue;
    const double cross = pq.cross(r - p);
    const Circle c = circumcircle(p, q, r);
    if (c.radius < 0.0) continue;
    if (cross > 0.0 &&
        (left.radius < 0.0 || pq.cross(c.center - p) > pq.cross(left.center - p))) {
      left = c;
    } else if (cross < 0.0 &&
               (right.radius < 0.0 || pq.cross(c.center - p) < pq.cross(right.center - p))) {
      right = c;
    }
  }
  if (left.radius < 0.0 && right.radius < 0.0) return circ;
  if (left.radius < 0.0) return right;
  if (right.radius < 0.0) return left;
  return left.radius <= right.radius ? left : right;
}

Circle sec_one_point(std::span<const Point> pts, std::size_t end, Point p) {
  Circle c{p, 0.0};
  for (std::size_t i = 0; i < end; ++i) {
    const Point q = pts[i];
    if (!sec_contains(c, q)) {
      c = (c.radius == 0.0) ? circle_from_diameter(p, q) : sec_two_points(pts, i + 1, p, q);
    }
  }
  return c;
}

// Deterministic Fisher-Yates driven by splitmix64 so results are identical on
// every platform and for every permutation of the input.
void deterministic_shuffle(std::vector<Point>& pts) {
  std::uint64_t state = 0x9E3779B97F4A7C15ull ^ pts.size();
  auto next = [&state]() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  for (std::size_t i = pts.size(); i > 1; --i) {
    std::swap(pts[i - 1], pts[next() % i]);
  }
}

double extent(std::span<const Point> pts) {
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Point& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

}  // namespace

Circle smallest_enclosing_circle(std::span<const Point> points, Tolerance tol) {
  if (points.size() < 2) {
    throw Error(ErrorKind::FewerThanTwoPoints, "need at least two points, got " + std::to_string(points.size()));
  }
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  const double dup_eps = tol.eps(extent(pts));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!pts[i].finite()) throw Error(ErrorKind::DuplicatePoints, "non-finite coordinate");
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (distance(pts[i], pts[j]) <= dup_eps) {
        throw Error(ErrorKind::DuplicatePoints, "two points coincide within tolerance");
      }
    }
  }
  deterministic_shuffle(pts);
  Circle c{Point{}, -1.0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (c.radius < 0.0 || !sec_contains(c, pts[i])) c = sec_one_point(pts, i + 1, pts[i]);
  }
  return c;
}

bool same_circle(const Circle& a, const Circle& b, double eps) {
  return distance(a.center, b.center) <= eps && std::abs(a.radius - b.radius) <= eps;
}

bool is_critical(Point p, std::span<const Point> points, Tolerance tol) {
  if (points.size() < 3) {
    throw Error(ErrorKind::FewerThanTwoPoints, "criticality needs at least three points");
  }
  const Circle sec = smallest_enclosing_circle(points, tol);
  const double eps = tol.eps(sec.radius);
  std::vector<Point> rest;
  rest.reserve(points.size() - 1);
  bool found = false;
  for (const Point& q : points) {
    if (!found && distance(p, q) <= eps) {
      found = true;
      continue;
    }
    rest.push_back(q);
  }
  if (!found) throw Error(ErrorKind::PointNotInConfiguration, "point is not a member of the set");
  return !same_circle(sec, smallest_enclosing_circle(rest, tol), eps);
}

AngleDeg clockwise_angle(Point p, Point c, Point q) {
  const Point u = p - c;
  const Point v = q - c;
  if ((u.x == 0.0 && u.y == 0.0) || (v.x == 0.0 && v.y == 0.0)) {
    throw Error(ErrorKind::DegenerateRay, "ray endpoint coincides with the center");
  }
  const double ccw = std::atan2(u.cross(v), u.dot(v));
  return AngleDeg(-rad_to_deg(ccw));
}

AngleDeg counterclockwise_angle(Point p, Point c, Point q) {
  return AngleDeg(360.0 - clockwise_angle(p, c, q).value());
}

Point adjacent_on_circle(Point r, const Circle& circle, std::span<const Point> points,
                         Direction direction, Tolerance tol) {
  const double eps = tol.eps(circle.radius);
  const double eps_a = tol.eps_angle();
  if (!circle.on_boundary(r, eps)) throw Error(ErrorKind::NotOnCircle, "reference point is not on the circle");
  bool have = false;
  Point best{};
  double best_angle = 0.0;
  for (const Point& q : points) {
    if (!circle.on_boundary(q, eps) || distance(q, r) <= eps) continue;
    const double a = direction == Direction::Clockwise ? clockwise_angle(r, circle.center, q).value()
                                                       : counterclockwise_angle(r, circle.center, q).value();
    if (!have || a < best_angle - eps_a) {
      have = true;
      best = q;
      best_angle = a;
    } else if (std::abs(a - best_angle) <= eps_a) {
      const double dq = distance(q, circle.center);
      const double db = distance(best, circle.center);
      if (dq < db || (dq == db && lex_less(q, best))) {
        best = q;
        best_angle = std::min(a, best_angle);
      }
    }
  }
  if (!have) throw Error(ErrorKind::NoOtherPointOnCircle, "no other point lies on the circle");
  return best;
}

std::vector<Circle> concentric_enclosing_circles(std::span<const Point> points, Tolerance tol) {
  const Circle sec = smallest_enclosing_circle(points, tol);
  const double eps = tol.eps(sec.radius);
  std::vector<double> dists;
  dists.reserve(points.size());
  for (const Point& p : points) {
    const double d = distance(p, sec.center);
    if (d > eps) dists.push_back(d);
  }
  std::sort(dists.begin(), dists.end(), std::greater<>());
  std::vector<Circle> circles{sec};
  double lead = sec.radius;
  for (double d : dists) {
    if (d >= lead - eps) continue;
    lead = d;
    circles.push_back({sec.center, d});
  }
  return circles;
}

bool in_arc(Point x, Point from, Point to, const Circle& circle, Tolerance tol) {
  const double eps = tol.eps(circle.radius);
  if (!circle.on_boundary(x, eps) || !circle.on_boundary(from, eps) || !circle.on_boundary(to, eps)) {
    throw Error(ErrorKind::NotOnCircle, "arc endpoints and query must lie on the circle");
  }
  const double eps_a = tol.eps_angle();
  const double ax = clockwise_angle(from, circle.center, x).value();
  double at = clockwise_angle(from, circle.center, to).value();
  if (ax <= eps_a || ax >= 360.0 - eps_a) return false;
  if (at <= eps_a || at >= 360.0 - eps_a) at = 360.0;
  return ax <= at + eps_a;
}

}  // namespace corda
