#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "corda/configuration.hpp"
#include "corda/geometry.hpp"
#include "corda/pattern.hpp"

namespace corda {

/// The target pattern embedded in the world frame of an agreement
/// configuration: centers superimposed, the anchor position `s` on the
/// leader's half-line, and both enclosing circles of equal radius.
struct MappedPattern {
  std::vector<Point> positions;  // same order as the TargetPattern
  std::vector<int> circle_of;    // index into `circles`, -1 for the center position
  std::vector<Circle> circles;   // concentric enclosing circles, decreasing radius
  Point s;
  std::size_t s_index = 0;
  bool s_fallback = false;  // every candidate for s was critical
  bool center_in_pattern = false;
  std::size_t center_index = 0;

  const Circle& innermost() const { return circles.back(); }
};

/// Index (in pattern order) of the anchor position: the first non-critical
/// position on the pattern's innermost concentric circle.
std::size_t anchor_index(const TargetPattern& p, Tolerance tol = {}, bool* fallback = nullptr);

MappedPattern map_pattern(const Configuration& q, const TargetPattern& p);

struct PartialPatternStatus {
  std::optional<int> k;  // nullopt: not even a (0,P)-partial pattern
  bool maximal = true;
};

/// Whether `q` is a (k,P)-partial pattern for this particular k.
bool is_partial_pattern(const Configuration& q, const MappedPattern& m, int k);

PartialPatternStatus partial_pattern_k(const Configuration& q, const MappedPattern& m);
PartialPatternStatus partial_pattern_k(const Configuration& q, const TargetPattern& p);

/// Indices of the extra robots for a maximal (k,P)-partial pattern.
std::vector<std::size_t> extra_robots(const Configuration& q, const MappedPattern& m,
                                      const PartialPatternStatus& status);
std::vector<Point> extra_robots(const Configuration& q, const TargetPattern& p,
                                const PartialPatternStatus& status);

struct FinalPositions {
  std::vector<Point> positions;
  std::vector<std::size_t> indices;  // into MappedPattern::positions
  Point reserved;                    // left for the leader's last move
  bool reserved_is_center = false;
};

FinalPositions final_positions(const MappedPattern& m);
FinalPositions final_positions(const Configuration& q, const TargetPattern& p);

}  // namespace corda
