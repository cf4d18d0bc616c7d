#include "massqd/pareto.hpp"

#include <algorithm>

namespace massqd {

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
  return a.fitness >= b.fitness && a.diversity >= b.diversity &&
         (a.fitness > b.fitness || a.diversity > b.diversity);
}

std::vector<std::vector<std::size_t>> pareto_fronts(std::span<const ObjectivePoint> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> dominators(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && dominates(points[i], points[j])) {
        dominated[i].push_back(j);
        ++dominators[j];
      }
    }
  }

  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominators[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated[i]) {
        if (--dominators[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<std::size_t> select_best(std::span<const ObjectivePoint> points,
                                     const std::vector<std::vector<std::size_t>>& fronts,
                                     std::size_t count) {
  std::vector<std::size_t> chosen;
  for (auto front : fronts) {
    std::stable_sort(front.begin(), front.end(), [&](std::size_t a, std::size_t b) {
      if (points[a].fitness != points[b].fitness) return points[a].fitness > points[b].fitness;
      return a < b;
    });
    for (std::size_t i : front) {
      if (chosen.size() == count) return chosen;
      chosen.push_back(i);
    }
  }
  return chosen;
}

}  // namespace massqd
