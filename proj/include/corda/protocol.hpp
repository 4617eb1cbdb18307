#pragma once

#include <optional>
#include <span>
#include <vector>

#include "corda/configuration.hpp"
#include "corda/geometry.hpp"
#include "corda/mapping.hpp"
#include "corda/pattern.hpp"

namespace corda {

/// Which branch of the protocol produced an intent. Used for traces only.
enum class Branch {
  Formed,
  LeaderAtCenter,
  LeaderInward,
  NonCriticalInward,
  ElectionIdle,
  LeaderToInnerCircle,
  LeaderToReserved,
  ExtraToCircle,
  ArrangeMove,
  ArrangeBreaker,
  ArrangeIdle,
  PlacementIdle,
};

const char* to_string(Branch b);
/// True for branches taken once the robots agree on a leader.
bool is_placement_branch(Branch b);

struct MotionIntent {
  enum class Kind { Stay, Straight, AlongCircle };

  Kind kind = Kind::Stay;
  Point dest;
  Circle circle;  // AlongCircle only
  Direction direction = Direction::Clockwise;
  Branch branch = Branch::ElectionIdle;

  static MotionIntent stay(Branch b) { return {Kind::Stay, {}, {}, Direction::Clockwise, b}; }
  static MotionIntent straight(Point dest, Branch b) {
    return {Kind::Straight, dest, {}, Direction::Clockwise, b};
  }
  static MotionIntent along(Point dest, const Circle& c, Branch b) {
    return {Kind::AlongCircle, dest, c, Direction::Clockwise, b};
  }
  bool moves() const { return kind != Kind::Stay; }
};

struct PArc {
  Point from;  // excluded
  Point to;    // included
  Circle circle;
};

struct DeadlockView {
  bool chain_found = false;
  std::optional<Point> breaker;
  std::optional<PArc> last_arc;
};

/// Full decision of one robot from one snapshot. Pure: no state survives
/// between calls.
MotionIntent compute(Point me, const Configuration& q, const TargetPattern& p,
                     double success_eps_rel = 1e-6);

/// Leader configurations that are not yet agreement configurations.
MotionIntent la_step(Point me, const Configuration& q);

/// Agreement configurations.
MotionIntent at_step(Point me, const Configuration& q, const TargetPattern& p);
MotionIntent at_step(Point me, const Configuration& q, const MappedPattern& m);

/// Extra robot (of the maximal partial pattern with this k) closest to `c`
/// among those not on it.
Point nearest_extra_robot(const Circle& c, const Configuration& q, const MappedPattern& m, int k);

/// Unoccupied final position on `c` nearest to `r`.
Point nearest_free_point(const Circle& c, const Configuration& q, Point r, const MappedPattern& m,
                         Point leader);

/// Where an extra robot at `r` actually heads for: the nearest free final
/// position when the straight segment never gets closer to the center than
/// its endpoints, otherwise the radial projection of `r` onto `c`.
Point extra_destination(const Circle& c, const Configuration& q, Point r, const MappedPattern& m,
                        Point leader);

MotionIntent arrange_step(Point me, const Circle& c, const Configuration& q,
                          std::span<const Point> finals);

std::vector<DeadlockView> find_deadlock_chains(const Circle& c, const Configuration& q,
                                               std::span<const Point> finals);
DeadlockView find_deadlock_breaker(const Circle& c, const Configuration& q,
                                   std::span<const Point> finals);

}  // namespace corda
