#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "massqd/encodings.hpp"

namespace massqd {

CaGenome random_ca(int mask_size, GridShape shape, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> col(0, shape.cols - 1);
  std::uniform_int_distribution<int> row(0, shape.rows - 1);
  CaGenome g;
  g.mask_size = mask_size;
  g.seed_x = col(rng);
  g.seed_y = row(rng);
  g.mask.resize(static_cast<std::size_t>(mask_size * mask_size));
  for (auto& w : g.mask) w = normal(rng);
  return g;
}

HeightGrid decode_ca(const CaGenome& g, int steps, GridShape shape) {
  if (steps < 0) throw std::invalid_argument("negative step count");
  if (g.mask_size < 1 || g.mask.size() != static_cast<std::size_t>(g.mask_size * g.mask_size)) {
    throw std::invalid_argument("ca mask does not match its size");
  }
  const int rows = shape.rows;
  const int cols = shape.cols;
  const int half = g.mask_size / 2;

  std::vector<double> state(static_cast<std::size_t>(shape.cells()), 0.0);
  std::vector<double> next(state.size());
  state.at(static_cast<std::size_t>(g.seed_y * cols + g.seed_x)) = 1.0;

  for (int t = 0; t < steps; ++t) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        double sum = 0.0;
        for (int dr = -half; dr <= half; ++dr) {
          const int nr = r + dr;
          if (nr < 0 || nr >= rows) continue;
          const double* wrow = &g.mask[static_cast<std::size_t>((dr + half) * g.mask_size + half)];
          for (int dc = -half; dc <= half; ++dc) {
            const int nc = c + dc;
            if (nc < 0 || nc >= cols) continue;
            sum += wrow[dc] * state[static_cast<std::size_t>(nr * cols + nc)];
          }
        }
        next[static_cast<std::size_t>(r * cols + c)] = std::clamp(sum, 0.0, double{kMaxLevel});
      }
    }
    state.swap(next);
  }

  HeightGrid grid(shape);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double v = state[static_cast<std::size_t>(r * cols + c)];
      grid.set(r, c, std::min(kMaxLevel, static_cast<int>(std::floor(v + 0.5))));
    }
  }
  return grid;
}

CaGenome mutate_ca(CaGenome g, double p_mut, double sigma, GridShape shape, Rng& rng) {
  std::bernoulli_distribution hit(p_mut);
  std::bernoulli_distribution up(0.5);
  std::normal_distribution<double> normal(0.0, sigma);
  if (hit(rng)) g.seed_x = std::clamp(g.seed_x + (up(rng) ? 1 : -1), 0, shape.cols - 1);
  if (hit(rng)) g.seed_y = std::clamp(g.seed_y + (up(rng) ? 1 : -1), 0, shape.rows - 1);
  for (auto& w : g.mask) {
    if (hit(rng)) w += normal(rng);
  }
  return g;
}

}  // namespace massqd
