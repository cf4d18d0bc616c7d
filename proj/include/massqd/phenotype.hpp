#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "json.hpp"

namespace massqd {

inline constexpr int kMaxLevel = 3;
inline constexpr int kMetersPerLevel = 3;
inline constexpr int kSiteRows = 11;
inline constexpr int kSiteCols = 14;

struct GridShape {
  int rows = kSiteRows;
  int cols = kSiteCols;

  int cells() const { return rows * cols; }
  bool operator==(const GridShape&) const = default;
};

// Building heights on a rectangular site, one level (0..3) per cell.
// Level h stands for a mass of 3*h meters.
class HeightGrid {
 public:
  HeightGrid() : HeightGrid(GridShape{}) {}
  explicit HeightGrid(GridShape shape);

  // Throws std::invalid_argument on a size mismatch or a level outside 0..3.
  static HeightGrid from_levels(GridShape shape, std::span<const int> levels);

  const GridShape& shape() const { return shape_; }
  int rows() const { return shape_.rows; }
  int cols() const { return shape_.cols; }
  int size() const { return shape_.cells(); }

  int at(int row, int col) const { return cells_[index(row, col)]; }
  void set(int row, int col, int level);

  // Row-major cell levels.
  std::span<const std::uint8_t> cells() const { return cells_; }

  bool operator==(const HeightGrid&) const = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(shape_.cols) +
           static_cast<std::size_t>(col);
  }

  GridShape shape_;
  std::vector<std::uint8_t> cells_;
};

// Direction the cold air travels. RowAxis: the flow runs along the row index
// (the 11-cell axis of the site), so the frontal silhouette is one line per
// column. ColAxis: the flow runs along the column index, one line per row.
enum class InflowAxis { RowAxis, ColAxis };

// 1 - frontal_area / max_frontal_area, where frontal_area sums the tallest
// level of every line perpendicular to the inflow. Higher is better.
double fitness(const HeightGrid& grid, InflowAxis axis = InflowAxis::RowAxis);

struct Features {
  int built_area = 0;      // cells with level > 0
  int building_count = 0;  // 4-connected components of built cells

  bool operator==(const Features&) const = default;
};

Features features(const HeightGrid& grid);

std::vector<double> flatten(const HeightGrid& grid);

// Inverse of flatten. Throws std::invalid_argument unless every value is an
// integral level and the length matches the shape.
HeightGrid unflatten(std::span<const double> values, GridShape shape);

// Export helpers: CSV rows carry the row-major levels, JSON is a nested
// rows x cols array.
void write_csv_row(std::ostream& out, const HeightGrid& grid);
nlohmann::json to_json(const HeightGrid& grid);
HeightGrid grid_from_json(const nlohmann::json& rows);

}  // namespace massqd
