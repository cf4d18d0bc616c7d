#include <algorithm>
#include <cmath>

#include "massqd/encodings.hpp"

namespace massqd {

namespace {

// Uniform over the (origin, extent) pairs with origin in [0, span-1] and
// origin + extent <= span.
std::pair<int, int> random_interval(int span, Rng& rng) {
  std::uniform_int_distribution<int> origin(0, span - 1);
  std::uniform_int_distribution<int> extent(0, span);
  while (true) {
    const int o = origin(rng);
    const int e = extent(rng);
    if (o + e <= span) return {o, e};
  }
}

int rounded_up_normal(double sigma, Rng& rng) {
  std::normal_distribution<double> normal(0.0, sigma);
  const double z = normal(rng);
  return z >= 0.0 ? static_cast<int>(std::ceil(z)) : -static_cast<int>(std::ceil(-z));
}

}  // namespace

ParametricGenome random_parametric(int count, GridShape shape, Rng& rng) {
  ParametricGenome g;
  g.rectangles.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const auto [x, w] = random_interval(shape.cols, rng);
    const auto [y, l] = random_interval(shape.rows, rng);
    g.rectangles.push_back({x, y, w, l});
  }
  return g;
}

HeightGrid decode_parametric(const ParametricGenome& g, GridShape shape) {
  std::vector<int> levels(static_cast<std::size_t>(shape.cells()), 0);
  for (const auto& rect : g.rectangles) {
    const auto r = clamp_rectangle(rect, shape);
    for (int row = r.y; row < r.y + r.l; ++row) {
      for (int col = r.x; col < r.x + r.w; ++col) {
        auto& cell = levels[static_cast<std::size_t>(row * shape.cols + col)];
        cell = std::min(cell + 1, kMaxLevel);
      }
    }
  }
  return HeightGrid::from_levels(shape, levels);
}

Rectangle clamp_rectangle(Rectangle r, GridShape shape) {
  r.w = std::clamp(r.w, 0, shape.cols);
  r.l = std::clamp(r.l, 0, shape.rows);
  r.x = std::clamp(r.x, 0, std::min(shape.cols - 1, shape.cols - r.w));
  r.y = std::clamp(r.y, 0, std::min(shape.rows - 1, shape.rows - r.l));
  return r;
}

ParametricGenome mutate_parametric(ParametricGenome g, double p_mut, double sigma,
                                   GridShape shape, Rng& rng) {
  std::bernoulli_distribution hit(p_mut);
  for (auto& r : g.rectangles) {
    for (int* param : {&r.x, &r.y, &r.w, &r.l}) {
      if (hit(rng)) *param += rounded_up_normal(sigma, rng);
    }
    r = clamp_rectangle(r, shape);
  }
  return g;
}

}  // namespace massqd
