#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "corda/geometry.hpp"
#include "corda/pattern.hpp"

namespace corda {

/// Positions of the robots. The order is simulator bookkeeping only; every
/// predicate below depends on the set of positions alone.
class Configuration {
 public:
  static constexpr std::size_t kMinRobots = 4;

  explicit Configuration(std::vector<Point> robots, Tolerance tol = {});

  std::span<const Point> robots() const { return robots_; }
  std::size_t size() const { return robots_.size(); }
  const Point& operator[](std::size_t i) const { return robots_[i]; }
  const Circle& sec() const { return sec_; }
  /// Absolute tolerance: eps_rel times the radius of the enclosing circle.
  double eps() const { return tol_.eps(sec_.radius); }
  Tolerance tolerance() const { return tol_; }

  /// Index of the robot within eps of `p`, if any.
  std::optional<std::size_t> find(Point p) const;
  /// Same positions, sorted lexicographically.
  Configuration canonical() const;

 private:
  std::vector<Point> robots_;
  Tolerance tol_;
  Circle sec_;
};

struct LeaderVerdict {
  enum class Kind { Elected, Symmetric };
  Kind kind = Kind::Symmetric;
  std::size_t index = 0;

  bool elected() const { return kind == Kind::Elected; }
};

/// Deterministic, similarity-invariant election among the robots closest to
/// the center of the enclosing circle. A robot at the center wins outright;
/// otherwise each candidate is ranked by its clockwise view of the others.
LeaderVerdict elect_leader(const Configuration& q);

/// Exactly one robot on the innermost concentric circle and no robot at the
/// center. Returns that robot (the leader) when the configuration qualifies.
std::optional<std::size_t> agreement_leader(const Configuration& q);
bool is_agreement_configuration(const Configuration& q);

bool equivalent_agreement(const Configuration& a, const Configuration& b);

/// Whether some rotation + translation + positive scaling carries the pattern
/// onto the configuration, each point within `match_rel` times the enclosing
/// radius. Reflections are never considered.
bool matches_pattern(const Configuration& q, const TargetPattern& p, double match_rel = 1e-6);
bool matches_pattern(std::span<const Point> q, std::span<const Point> p, double match_rel = 1e-6);

}  // namespace corda
