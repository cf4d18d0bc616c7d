#include "massqd/phenotype.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace massqd {

HeightGrid::HeightGrid(GridShape shape) : shape_(shape) {
  if (shape.rows <= 0 || shape.cols <= 0) {
    throw std::invalid_argument("grid shape must be positive");
  }
  cells_.assign(static_cast<std::size_t>(shape.cells()), 0);
}

HeightGrid HeightGrid::from_levels(GridShape shape, std::span<const int> levels) {
  HeightGrid grid(shape);
  if (levels.size() != static_cast<std::size_t>(shape.cells())) {
    throw std::invalid_argument("expected " + std::to_string(shape.cells()) + " levels, got " +
                                std::to_string(levels.size()));
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0 || levels[i] > kMaxLevel) {
      throw std::invalid_argument("level out of range at index " + std::to_string(i));
    }
    grid.cells_[i] = static_cast<std::uint8_t>(levels[i]);
  }
  return grid;
}

void HeightGrid::set(int row, int col, int level) {
  if (row < 0 || row >= shape_.rows || col < 0 || col >= shape_.cols) {
    throw std::out_of_range("cell (" + std::to_string(row) + "," + std::to_string(col) +
                            ") outside grid");
  }
  if (level < 0 || level > kMaxLevel) {
    throw std::invalid_argument("level " + std::to_string(level) + " outside 0..3");
  }
  cells_[index(row, col)] = static_cast<std::uint8_t>(level);
}

double fitness(const HeightGrid& grid, InflowAxis axis) {
  const bool per_column = axis == InflowAxis::RowAxis;
  const int lines = per_column ? grid.cols() : grid.rows();
  const int depth = per_column ? grid.rows() : grid.cols();

  int frontal = 0;
  for (int line = 0; line < lines; ++line) {
    int tallest = 0;
    for (int k = 0; k < depth && tallest < kMaxLevel; ++k) {
      tallest = std::max(tallest, per_column ? grid.at(k, line) : grid.at(line, k));
    }
    frontal += tallest;
  }
  return 1.0 - static_cast<double>(frontal) / static_cast<double>(lines * kMaxLevel);
}

Features features(const HeightGrid& grid) {
  const int rows = grid.rows();
  const int cols = grid.cols();
  const auto cells = grid.cells();

  Features out;
  std::vector<char> seen(cells.size(), 0);
  std::vector<int> stack;
  stack.reserve(cells.size());

  for (int start = 0; start < grid.size(); ++start) {
    if (cells[start] == 0) continue;
    ++out.built_area;
    if (seen[start]) continue;

    ++out.building_count;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int r = cur / cols;
      const int c = cur % cols;
      const int neighbours[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (const auto& [nr, nc] : neighbours) {
        if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
        const int next = nr * cols + nc;
        if (cells[next] != 0 && !seen[next]) {
          seen[next] = 1;
          stack.push_back(next);
        }
      }
    }
  }
  return out;
}

std::vector<double> flatten(const HeightGrid& grid) {
  const auto cells = grid.cells();
  return {cells.begin(), cells.end()};
}

HeightGrid unflatten(std::span<const double> values, GridShape shape) {
  std::vector<int> levels;
  levels.reserve(values.size());
  for (double v : values) {
    if (v != std::floor(v)) throw std::invalid_argument("non-integral level");
    levels.push_back(static_cast<int>(v));
  }
  return HeightGrid::from_levels(shape, levels);
}

void write_csv_row(std::ostream& out, const HeightGrid& grid) {
  const auto cells = grid.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << static_cast<int>(cells[i]);
  }
  out << '\n';
}

nlohmann::json to_json(const HeightGrid& grid) {
  auto rows = nlohmann::json::array();
  for (int r = 0; r < grid.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < grid.cols(); ++c) row.push_back(grid.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

HeightGrid grid_from_json(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array() || rows.front().empty()) {
    throw std::invalid_argument("phenotype must be a non-empty nested array");
  }
  GridShape shape{static_cast<int>(rows.size()), static_cast<int>(rows.front().size())};
  std::vector<int> levels;
  levels.reserve(static_cast<std::size_t>(shape.cells()));
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != shape.cols) {
      throw std::invalid_argument("phenotype rows must have equal length");
    }
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw std::invalid_argument("phenotype levels must be integers");
      levels.push_back(v.get<int>());
    }
  }
  return HeightGrid::from_levels(shape, levels);
}

}  // namespace massqd
