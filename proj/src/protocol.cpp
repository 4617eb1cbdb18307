#include "corda/protocol.hpp"

#include <algorithm>
#include <limits>

namespace corda {

const char* to_string(Branch b) {
  switch (b) {
    case Branch::Formed: return "formed";
    case Branch::LeaderAtCenter: return "leader_at_center";
    case Branch::LeaderInward: return "leader_inward";
    case Branch::NonCriticalInward: return "non_critical_inward";
    case Branch::ElectionIdle: return "election_idle";
    case Branch::LeaderToInnerCircle: return "leader_to_inner_circle";
    case Branch::LeaderToReserved: return "leader_to_reserved";
    case Branch::ExtraToCircle: return "extra_to_circle";
    case Branch::ArrangeMove: return "arrange_move";
    case Branch::ArrangeBreaker: return "arrange_breaker";
    case Branch::ArrangeIdle: return "arrange_idle";
    case Branch::PlacementIdle: return "placement_idle";
  }
  return "unknown";
}

bool is_placement_branch(Branch b) {
  switch (b) {
    case Branch::LeaderToInnerCircle:
    case Branch::LeaderToReserved:
    case Branch::ExtraToCircle:
    case Branch::ArrangeMove:
    case Branch::ArrangeBreaker:
    case Branch::ArrangeIdle:
    case Branch::PlacementIdle:
      return true;
    default:
      return false;
  }
}

namespace {

std::size_t index_of(const Configuration& q, Point me) {
  const auto i = q.find(me);
  if (!i) throw Error(ErrorKind::PointNotInConfiguration, "observing robot is not in the snapshot");
  return *i;
}

std::vector<Point> on_circle(const Circle& c, std::span<const Point> pts, double eps) {
  std::vector<Point> out;
  for (const Point& x : pts) {
    if (c.on_boundary(x, eps)) out.push_back(x);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Leader election phase

MotionIntent la_step(Point me, const Configuration& q) {
  const LeaderVerdict verdict = elect_leader(q);
  if (!verdict.elected()) throw Error(ErrorKind::SymmetricConfiguration, "no unique leader");
  const std::size_t self = index_of(q, me);
  const std::size_t leader = verdict.index;
  const Point c = q.sec().center;
  const double eps = q.eps();

  if (distance(q[leader], c) <= eps) {
    if (self != leader) return MotionIntent::stay(Branch::ElectionIdle);
    // Only the leader acts here, so any tie-break it applies on its own is sound.
    std::size_t nearest = leader;
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (j == leader) continue;
      if (nearest == leader) {
        nearest = j;
        continue;
      }
      const double dj = distance(q[j], c);
      const double dn = distance(q[nearest], c);
      if (dj < dn - eps || (dj <= dn + eps && lex_less(q[j], q[nearest]))) nearest = j;
    }
    return MotionIntent::straight(midpoint(q[leader], q[nearest]), Branch::LeaderAtCenter);
  }

  if (!is_critical(q[leader], q.robots(), q.tolerance())) {
    if (self != leader) return MotionIntent::stay(Branch::ElectionIdle);
    return MotionIntent::straight(midpoint(q[leader], c), Branch::LeaderInward);
  }

  // The leader is critical, hence on the enclosing circle like every robot closest to c.
  std::vector<std::pair<double, std::size_t>> ring;
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (j == leader || !q.sec().on_boundary(q[j], eps)) continue;
    ring.emplace_back(clockwise_angle(q[leader], c, q[j]).value(), j);
  }
  std::sort(ring.begin(), ring.end());
  for (const auto& [angle, j] : ring) {
    if (is_critical(q[j], q.robots(), q.tolerance())) continue;
    if (self != j) return MotionIntent::stay(Branch::ElectionIdle);
    return MotionIntent::straight(midpoint(q[j], c), Branch::NonCriticalInward);
  }
  throw Error(ErrorKind::NoNonCriticalRobot, "every robot on the enclosing circle is critical");
}

// ---------------------------------------------------------------------------
// Placement phase

Point nearest_extra_robot(const Circle& circle, const Configuration& q, const MappedPattern& m, int k) {
  const auto leader = agreement_leader(q);
  if (!leader) throw Error(ErrorKind::NotAgreementConfiguration, "configuration has no agreement leader");
  const Point c = circle.center;
  const double eps = q.eps();
  const double eps_a = q.tolerance().eps_angle();
  const auto extras = extra_robots(q, m, PartialPatternStatus{k, true});

  bool have = false;
  std::size_t best = 0;
  double best_gap = 0.0, best_angle = 0.0;
  bool best_inside = false;
  for (std::size_t j : extras) {
    if (circle.on_boundary(q[j], eps)) continue;
    const double d = distance(q[j], c);
    const double gap = std::abs(d - circle.radius);
    const bool inside = d < circle.radius;
    const double angle = clockwise_angle(q[*leader], c, q[j]).value();
    bool better = !have;
    if (have) {
      if (std::abs(gap - best_gap) > eps) {
        better = gap < best_gap;
      } else if (inside != best_inside) {
        better = inside;
      } else if (std::abs(angle - best_angle) > eps_a) {
        better = angle < best_angle;
      } else {
        better = d < distance(q[best], c);
      }
    }
    if (better) {
      have = true;
      best = j;
      best_gap = gap;
      best_inside = inside;
      best_angle = angle;
    }
  }
  if (!have) throw Error(ErrorKind::NoExtraRobotOffCircle, "every extra robot is already on the circle");
  return q[best];
}

namespace {

std::vector<Point> free_finals_on(const Circle& circle, const Configuration& q, const MappedPattern& m) {
  const double eps = q.eps();
  std::vector<Point> out;
  for (const Point& f : final_positions(m).positions) {
    if (circle.on_boundary(f, eps) && !q.find(f)) out.push_back(f);
  }
  return out;
}

std::optional<Point> nearest_of(std::span<const Point> candidates, Point r, Point leader, Point c,
                                double eps, double eps_a) {
  std::optional<Point> best;
  double best_d = 0.0, best_a = 0.0;
  for (const Point& x : candidates) {
    const double d = distance(x, r);
    const double a = clockwise_angle(leader, c, x).value();
    if (!best || d < best_d - eps || (d <= best_d + eps && a < best_a - eps_a)) {
      best = x;
      best_d = d;
      best_a = a;
    }
  }
  return best;
}

}  // namespace

Point nearest_free_point(const Circle& circle, const Configuration& q, Point r, const MappedPattern& m,
                         Point leader) {
  const auto candidates = free_finals_on(circle, q, m);
  const auto best = nearest_of(candidates, r, leader, circle.center, q.eps(), q.tolerance().eps_angle());
  if (!best) throw Error(ErrorKind::NoFreePosition, "every final position on the circle is occupied");
  return *best;
}

Point extra_destination(const Circle& circle, const Configuration& q, Point r, const MappedPattern& m,
                        Point leader) {
  const Point c = circle.center;
  const double eps = q.eps();
  const auto candidates = free_finals_on(circle, q, m);
  const auto target = nearest_of(candidates, r, leader, c, eps, q.tolerance().eps_angle());
  if (target) {
    const Point a = r - c;
    const Point b = *target - c;
    const Point ab = b - a;
    // |x - c| along the segment is convex; its minimum sits at an endpoint
    // exactly when it is monotone.
    if (a.dot(ab) >= 0.0 || b.dot(ab) <= 0.0) return *target;
  }

  const double theta = polar(r, c);
  const Point radial = circle.at_polar(theta);
  const auto occupant = q.find(radial);
  if (!occupant || distance(q[*occupant], r) <= eps) return radial;
  if (target) return *target;

  // Land halfway between the occupant and its clockwise successor on the circle.
  const auto ring = on_circle(circle, q.robots(), eps);
  double gap = 360.0;
  for (const Point& x : ring) {
    if (distance(x, radial) <= eps) continue;
    gap = std::min(gap, clockwise_angle(radial, c, x).value());
  }
  return circle.at_polar(theta - deg_to_rad(gap / 2.0));
}

namespace {

struct ArcTable {
  std::vector<Point> points;  // P-points in clockwise order
  std::vector<double> span;   // span[j]: clockwise angle of arc (points[j-1], points[j]]
  std::vector<int> count;     // robots on arc j
  std::vector<std::optional<Point>> at_end;  // robot sitting on points[j]
};

ArcTable build_arcs(const Circle& circle, const Configuration& q, std::span<const Point> finals) {
  const double eps = q.eps();
  const double eps_a = q.tolerance().eps_angle();
  const Point c = circle.center;
  ArcTable t;
  auto pts = on_circle(circle, finals, eps);
  if (pts.size() < 2) return t;
  const Point origin = pts.front();
  std::vector<std::pair<double, Point>> ordered;
  for (const Point& x : pts) {
    double a = clockwise_angle(origin, c, x).value();
    if (distance(x, origin) <= eps) a = 0.0;
    ordered.emplace_back(a, x);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  const std::size_t m = ordered.size();
  for (const auto& [a, x] : ordered) t.points.push_back(x);
  t.span.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    t.span[j] = clockwise_angle(t.points[(j + m - 1) % m], c, t.points[j]).value();
  }
  t.count.assign(m, 0);
  t.at_end.assign(m, std::nullopt);
  for (const Point& x : q.robots()) {
    if (!circle.on_boundary(x, eps)) continue;
    double ax = clockwise_angle(origin, c, x).value();
    std::size_t arc = 0;
    if (ax > eps_a && ax < 360.0 - eps_a) {
      arc = 0;  // between the last point and the origin unless found below
      for (std::size_t j = 1; j < m; ++j) {
        if (ordered[j].first >= ax - eps_a) {
          arc = j;
          break;
        }
      }
    }
    ++t.count[arc];
    if (distance(x, t.points[arc]) <= eps) t.at_end[arc] = x;
  }
  return t;
}

}  // namespace

std::vector<DeadlockView> find_deadlock_chains(const Circle& circle, const Configuration& q,
                                               std::span<const Point> finals) {
  const ArcTable t = build_arcs(circle, q, finals);
  const std::size_t m = t.points.size();
  const double eps_a = q.tolerance().eps_angle();
  std::vector<DeadlockView> out;
  if (m < 2) return out;
  auto prev = [m](std::size_t j) { return (j + m - 1) % m; };
  auto single_at_end = [&](std::size_t j) { return t.count[j] == 1 && t.at_end[j].has_value(); };

  for (std::size_t free = 0; free < m; ++free) {
    if (t.count[free] != 0) continue;
    const std::size_t first = prev(free);
    if (first == free || std::abs(t.span[first] - 180.0) > eps_a || !single_at_end(first)) continue;
    std::size_t j = prev(first);
    while (j != free && single_at_end(j)) j = prev(j);
    if (j == free || t.count[j] < 2 || !t.at_end[j]) continue;
    DeadlockView v;
    v.chain_found = true;
    v.breaker = *t.at_end[j];
    v.last_arc = PArc{t.points[prev(j)], t.points[j], circle};
    out.push_back(v);
  }
  return out;
}

DeadlockView find_deadlock_breaker(const Circle& circle, const Configuration& q,
                                   std::span<const Point> finals) {
  auto chains = find_deadlock_chains(circle, q, finals);
  if (chains.empty()) return {};
  return chains.front();
}

MotionIntent arrange_step(Point me, const Circle& circle, const Configuration& q,
                          std::span<const Point> finals) {
  const double eps = q.eps();
  const double eps_a = q.tolerance().eps_angle();
  const Tolerance tol = q.tolerance();
  const Point c = circle.center;
  if (!circle.on_boundary(me, eps)) throw Error(ErrorKind::NotOnCircle, "arranging robot is off the circle");

  std::optional<Point> next;
  double next_angle = 0.0;
  for (const Point& f : on_circle(circle, finals, eps)) {
    if (distance(f, me) <= eps) continue;
    const double a = clockwise_angle(me, c, f).value();
    if (a <= eps_a) continue;
    if (!next || a < next_angle) {
      next = f;
      next_angle = a;
    }
  }
  if (!next) return MotionIntent::stay(Branch::ArrangeIdle);

  bool arc_free = true;
  for (const Point& x : q.robots()) {
    if (distance(x, me) <= eps || !circle.on_boundary(x, eps)) continue;
    if (in_arc(x, me, *next, circle, tol)) {
      arc_free = false;
      break;
    }
  }

  if (!same_circle(circle, q.sec(), eps)) {
    if (!arc_free) return MotionIntent::stay(Branch::ArrangeIdle);
    return MotionIntent::along(*next, circle, Branch::ArrangeMove);
  }

  bool breaker = false;
  for (const DeadlockView& v : find_deadlock_chains(circle, q, finals)) {
    if (distance(*v.breaker, me) <= eps) breaker = true;
  }
  if (!arc_free && !breaker) return MotionIntent::stay(Branch::ArrangeIdle);

  double angle = breaker ? next_angle / 2.0 : next_angle;
  const Point behind = adjacent_on_circle(me, circle, q.robots(), Direction::Counterclockwise, tol);
  const double allowed = 180.0 - clockwise_angle(behind, c, me).value();
  if (allowed <= eps_a) return MotionIntent::stay(Branch::ArrangeIdle);
  const bool clamped = angle > allowed;
  if (clamped) angle = allowed;

  const Branch branch = breaker ? Branch::ArrangeBreaker : Branch::ArrangeMove;
  if (!clamped && !breaker) return MotionIntent::along(*next, circle, branch);
  return MotionIntent::along(circle.at_polar(polar(me, c) - deg_to_rad(angle)), circle, branch);
}

MotionIntent at_step(Point me, const Configuration& q, const MappedPattern& m) {
  const auto leader = agreement_leader(q);
  if (!leader) throw Error(ErrorKind::NotAgreementConfiguration, "configuration has no agreement leader");
  const std::size_t self = index_of(q, me);
  const bool is_leader = self == *leader;
  const Point c = q.sec().center;
  const double eps = q.eps();

  const PartialPatternStatus status = partial_pattern_k(q, m);
  if (!status.k) {
    if (!is_leader) return MotionIntent::stay(Branch::PlacementIdle);
    return MotionIntent::straight(midpoint(c, m.s), Branch::LeaderToInnerCircle);
  }

  const FinalPositions finals = final_positions(m);
  const bool all_occupied = std::all_of(finals.positions.begin(), finals.positions.end(),
                                        [&](const Point& f) { return q.find(f).has_value(); });
  if (all_occupied) {
    if (!is_leader || distance(q[self], finals.reserved) <= eps) {
      return MotionIntent::stay(Branch::PlacementIdle);
    }
    return MotionIntent::straight(finals.reserved, Branch::LeaderToReserved);
  }

  const int k = *status.k;
  if (k >= static_cast<int>(m.circles.size())) return MotionIntent::stay(Branch::PlacementIdle);
  const Circle& target = m.circles[static_cast<std::size_t>(k)];

  const auto extras = extra_robots(q, m, status);
  const bool off_circle = std::any_of(extras.begin(), extras.end(),
                                      [&](std::size_t j) { return !target.on_boundary(q[j], eps); });
  if (off_circle) {
    const Point mover = nearest_extra_robot(target, q, m, k);
    if (distance(mover, me) > eps) return MotionIntent::stay(Branch::PlacementIdle);
    return MotionIntent::straight(extra_destination(target, q, mover, m, q[*leader]), Branch::ExtraToCircle);
  }

  if (!target.on_boundary(me, eps)) return MotionIntent::stay(Branch::PlacementIdle);
  return arrange_step(me, target, q, finals.positions);
}

MotionIntent at_step(Point me, const Configuration& q, const TargetPattern& p) {
  return at_step(me, q, map_pattern(q, p));
}

MotionIntent compute(Point me, const Configuration& q, const TargetPattern& p, double success_eps_rel) {
  if (q.size() != p.size()) throw Error(ErrorKind::SizeMismatch, "snapshot and pattern differ in size");
  // Work on a canonical copy so the decision depends on positions only.
  const Configuration snapshot = q.canonical();
  index_of(snapshot, me);
  if (matches_pattern(snapshot, p, success_eps_rel)) return MotionIntent::stay(Branch::Formed);
  if (is_agreement_configuration(snapshot)) return at_step(me, snapshot, p);
  return la_step(me, snapshot);
}

}  // namespace corda
