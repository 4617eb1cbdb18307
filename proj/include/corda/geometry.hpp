#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "corda/error.hpp"

// Planar geometry kernel. The world frame is the usual x-right/y-up frame and
// "clockwise" is the shared handedness of every robot: a clockwise sweep
// decreases the mathematical (counterclockwise) polar angle.
namespace corda {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }

  double dot(Point o) const { return x * o.x + y * o.y; }
  double cross(Point o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Point a, Point b) { return (a - b).norm(); }
inline Point midpoint(Point a, Point b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

/// Strict (x, then y) order. Only used for internal determinism.
inline bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

struct Circle {
  Point center;
  double radius = 0.0;

  bool contains(Point p, double eps) const { return distance(center, p) <= radius + eps; }
  bool on_boundary(Point p, double eps) const {
    return std::abs(distance(center, p) - radius) <= eps;
  }
  /// Point of the circle at the given counterclockwise polar angle (radians).
  Point at_polar(double theta) const {
    return {center.x + radius * std::cos(theta), center.y + radius * std::sin(theta)};
  }
};

/// Angle in degrees normalized into [0, 360).
class AngleDeg {
 public:
  AngleDeg() = default;
  explicit AngleDeg(double degrees);

  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_ = 0.0;
};

/// Scale-relative tolerance. Absolute epsilons are always `eps_rel` times a
/// reference length (normally the radius of the smallest enclosing circle).
struct Tolerance {
  double eps_rel = 1e-9;

  Tolerance() = default;
  explicit Tolerance(double rel);

  double eps(double scale) const { return eps_rel * scale; }
  /// Angular tolerance in degrees.
  double eps_angle() const { return eps_rel * 360.0; }
};

enum class Direction { Clockwise, Counterclockwise };

constexpr double kPi = 3.14159265358979323846;
inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

/// Counterclockwise polar angle of `p` seen from `c`, in radians.
inline double polar(Point p, Point c) { return std::atan2(p.y - c.y, p.x - c.x); }

/// Point obtained by rotating `p` clockwise about `c` by `degrees`.
Point rotate_clockwise(Point p, Point c, double degrees);

Circle circle_from_diameter(Point a, Point b);
/// Circumcircle of three points; radius < 0 if they are collinear.
Circle circumcircle(Point a, Point b, Point c);

/// Smallest circle enclosing every point (randomized incremental, expected
/// linear time). The result depends only on the set of points, not on the
/// order in which they are supplied.
Circle smallest_enclosing_circle(std::span<const Point> points, Tolerance tol = {});

/// A position is critical iff removing it changes the smallest enclosing circle.
bool is_critical(Point p, std::span<const Point> points, Tolerance tol = {});
bool same_circle(const Circle& a, const Circle& b, double eps);

/// Angle swept by rotating the ray [c,p) clockwise onto [c,q).
AngleDeg clockwise_angle(Point p, Point c, Point q);
AngleDeg counterclockwise_angle(Point p, Point c, Point q);

/// Next point of `points` on `circle` after `r` in the given direction.
Point adjacent_on_circle(Point r, const Circle& circle, std::span<const Point> points,
                         Direction direction, Tolerance tol = {});

/// Circles centered at the center of the smallest enclosing circle through
/// every point, sorted by strictly decreasing radius. The first one is the
/// smallest enclosing circle itself; a point at the center spans no circle.
std::vector<Circle> concentric_enclosing_circles(std::span<const Point> points,
                                                 Tolerance tol = {});

/// Membership in the clockwise arc from `from` (excluded) to `to` (included).
/// When `from` and `to` coincide the arc is the whole circle minus `from`.
bool in_arc(Point x, Point from, Point to, const Circle& circle, Tolerance tol = {});

}  // namespace corda
