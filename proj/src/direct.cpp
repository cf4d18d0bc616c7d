#include <stdexcept>

#include "massqd/encodings.hpp"

namespace massqd {

DirectGenome random_direct(GridShape shape, Rng& rng) {
  std::uniform_int_distribution<int> level(0, kMaxLevel);
  DirectGenome g;
  g.heights.resize(static_cast<std::size_t>(shape.cells()));
  for (auto& h : g.heights) h = static_cast<std::uint8_t>(level(rng));
  return g;
}

HeightGrid decode_direct(const DirectGenome& g, GridShape shape) {
  std::vector<int> levels(g.heights.begin(), g.heights.end());
  return HeightGrid::from_levels(shape, levels);
}

DirectGenome mutate_direct(DirectGenome g, double p_mut, Rng& rng) {
  std::bernoulli_distribution hit(p_mut);
  std::bernoulli_distribution up(0.5);
  for (auto& h : g.heights) {
    if (!hit(rng)) continue;
    if (h == 0) {
      h = 1;
    } else if (h == kMaxLevel) {
      h = kMaxLevel - 1;
    } else {
      h = static_cast<std::uint8_t>(up(rng) ? h + 1 : h - 1);
    }
  }
  return g;
}

}  // namespace massqd
