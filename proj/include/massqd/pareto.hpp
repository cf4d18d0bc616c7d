#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace massqd {

// Both objectives are maximised.
struct ObjectivePoint {
  double fitness = 0.0;
  double diversity = 0.0;
};

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b);

// Non-dominated sorting. Fronts are returned best first, each listing point
// indices in ascending order.
std::vector<std::vector<std::size_t>> pareto_fronts(std::span<const ObjectivePoint> points);

// Walks the fronts in rank order and takes up to `count` indices; inside a
// front higher fitness goes first, then lower index.
std::vector<std::size_t> select_best(std::span<const ObjectivePoint> points,
                                     const std::vector<std::vector<std::size_t>>& fronts,
                                     std::size_t count = 4);

}  // namespace massqd
