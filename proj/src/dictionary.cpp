#include <cstdlib>
#include <functional>
#include <stdexcept>

#include "massqd/encodings.hpp"
#include "massqd/error.hpp"

namespace massqd {

namespace {

std::uint32_t block_index(const Block& block) {
  std::uint32_t index = 0;
  for (auto level : block) index = index * 4 + level;
  return index;
}

}  // namespace

std::vector<Block> build_dictionary(int block_rows, int block_cols) {
  if (block_rows < 1 || block_cols < 1 || block_rows * block_cols > 9) {
    throw ConfigError("block", "dictionary blocks need 1 <= rows*cols <= 9, got " +
                                   std::to_string(block_rows) + "x" + std::to_string(block_cols));
  }
  const auto cells = static_cast<std::size_t>(block_rows * block_cols);
  const std::uint32_t count = 1u << (2 * cells);

  std::vector<Block> out(count, Block(cells, 0));
  for (std::uint32_t index = 0; index < count; ++index) {
    std::uint32_t rest = index;
    for (std::size_t k = cells; k-- > 0;) {
      out[index][k] = static_cast<std::uint8_t>(rest & 3u);
      rest >>= 2;
    }
  }
  return out;
}

int block_distance(const Block& a, const Block& b) {
  if (a.size() != b.size()) throw std::invalid_argument("block size mismatch");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(int{a[i]} - int{b[i]});
  return d;
}

std::vector<CellGroup> partition_grid(GridShape shape, int block_rows, int block_cols) {
  std::vector<CellGroup> groups;
  for (int r = 0; r < shape.rows; r += block_rows) {
    const int h = std::min(block_rows, shape.rows - r);
    for (int c = 0; c < shape.cols; c += block_cols) {
      groups.push_back({r, c, h, std::min(block_cols, shape.cols - c)});
    }
  }
  return groups;
}

DictionaryCodec::DictionaryCodec(GridShape shape, int block_rows, int block_cols)
    : shape_(shape), block_rows_(block_rows), block_cols_(block_cols) {
  if (block_rows < 1 || block_cols < 1 || block_rows * block_cols > 9) {
    throw ConfigError("block", "dictionary blocks need 1 <= rows*cols <= 9");
  }
  groups_ = partition_grid(shape, block_rows, block_cols);

  std::vector<std::pair<int, int>> shapes;
  for (const auto& g : groups_) {
    std::size_t slot = 0;
    while (slot < shapes.size() && shapes[slot] != std::pair{g.rows, g.cols}) ++slot;
    if (slot == shapes.size()) {
      shapes.emplace_back(g.rows, g.cols);
      dictionaries_.push_back(build_dictionary(g.rows, g.cols));
    }
    group_dictionary_.push_back(slot);
  }
}

std::uint32_t DictionaryCodec::entries(std::size_t g) const {
  return static_cast<std::uint32_t>(dictionaries_[group_dictionary_[g]].size());
}

const Block& DictionaryCodec::block(std::size_t g, std::uint32_t index) const {
  return dictionaries_[group_dictionary_.at(g)].at(index);
}

DictionaryGenome DictionaryCodec::random(Rng& rng) const {
  DictionaryGenome g{block_rows_, block_cols_, {}};
  g.block_indices.reserve(groups_.size());
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    std::uniform_int_distribution<std::uint32_t> pick(0, entries(i) - 1);
    g.block_indices.push_back(pick(rng));
  }
  return g;
}

HeightGrid DictionaryCodec::decode(const DictionaryGenome& g) const {
  if (!valid(g)) throw std::invalid_argument("dictionary genome does not match codec");
  HeightGrid grid(shape_);
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    const auto& group = groups_[i];
    const auto& levels = block(i, g.block_indices[i]);
    for (int r = 0; r < group.rows; ++r) {
      for (int c = 0; c < group.cols; ++c) {
        grid.set(group.row + r, group.col + c, levels[static_cast<std::size_t>(r * group.cols + c)]);
      }
    }
  }
  return grid;
}

std::vector<std::uint32_t> DictionaryCodec::transitions(std::size_t g,
                                                        std::uint32_t index) const {
  const Block& from = block(g, index);
  Block to(from.size(), 0);
  std::vector<std::uint32_t> out;

  // Depth-first over cells, spending at most kDictionaryMaxStep of distance.
  std::function<void(std::size_t, int)> visit = [&](std::size_t cell, int budget) {
    if (cell == from.size()) {
      if (budget < kDictionaryMaxStep) out.push_back(block_index(to));
      return;
    }
    for (int level = 0; level <= kMaxLevel; ++level) {
      const int cost = std::abs(level - int{from[cell]});
      if (cost > budget) continue;
      to[cell] = static_cast<std::uint8_t>(level);
      visit(cell + 1, budget - cost);
    }
  };
  visit(0, kDictionaryMaxStep);
  return out;  // lexicographic levels == ascending index
}

DictionaryGenome DictionaryCodec::mutate(DictionaryGenome g, double p_mut, Rng& rng) const {
  std::bernoulli_distribution hit(p_mut);
  for (std::size_t i = 0; i < g.block_indices.size(); ++i) {
    if (!hit(rng)) continue;
    const auto options = transitions(i, g.block_indices[i]);
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    g.block_indices[i] = options[pick(rng)];
  }
  return g;
}

DictionaryGenome DictionaryCodec::lookup(const HeightGrid& grid) const {
  if (grid.shape() != shape_) throw std::invalid_argument("grid shape does not match codec");
  DictionaryGenome g{block_rows_, block_cols_, {}};
  for (const auto& group : groups_) {
    Block levels;
    for (int r = 0; r < group.rows; ++r) {
      for (int c = 0; c < group.cols; ++c) {
        levels.push_back(static_cast<std::uint8_t>(grid.at(group.row + r, group.col + c)));
      }
    }
    g.block_indices.push_back(block_index(levels));
  }
  return g;
}

bool DictionaryCodec::valid(const DictionaryGenome& g) const {
  if (g.block_rows != block_rows_ || g.block_cols != block_cols_) return false;
  if (g.block_indices.size() != groups_.size()) return false;
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    if (g.block_indices[i] >= entries(i)) return false;
  }
  return true;
}

}  // namespace massqd
