#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "corda/geometry.hpp"

namespace corda {

/// The target pattern, kept in (x, then y) lexicographic order of its own frame.
class TargetPattern {
 public:
  explicit TargetPattern(std::vector<Point> positions, Tolerance tol = {});

  std::span<const Point> positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }
  const Point& operator[](std::size_t i) const { return positions_[i]; }

 private:
  std::vector<Point> positions_;
};

}  // namespace corda
