#include "massqd/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "massqd/archive.hpp"
#include "massqd/error.hpp"

namespace massqd {

namespace {

constexpr int kTile = 24;
constexpr int kMargin = 40;
constexpr const char* kBlank = "#ffffff";

struct Rgb {
  double r, g, b;
};

// Five-stop viridis approximation.
constexpr std::array<Rgb, 5> kRamp = {{{68, 1, 84}, {59, 82, 139}, {33, 145, 140},
                                       {94, 201, 98}, {253, 231, 37}}};

constexpr std::array<const char*, kEncodingCount> kEncodingColors = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};

constexpr std::array<const char*, kMaxLevel + 1> kLevelShades = {"#f0f0f0", "#bdbdbd", "#737373",
                                                                 "#252525"};

std::string hex(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(c.r)),
                static_cast<int>(std::lround(c.g)), static_cast<int>(std::lround(c.b)));
  return buf;
}

std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0) * (kRamp.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(t), kRamp.size() - 2);
  const double f = t - static_cast<double>(i);
  const Rgb& a = kRamp[i];
  const Rgb& b = kRamp[i + 1];
  return hex({a.r + (b.r - a.r) * f, a.g + (b.g - a.g) * f, a.b + (b.b - a.b) * f});
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_archive(const nlohmann::json& snapshot, TileColoring coloring) {
  const Archive archive = archive_from_json(snapshot);
  const int cols = archive.area_bins();
  const int rows = archive.count_bins();
  const int width = 2 * kMargin + cols * kTile;
  const int height = 2 * kMargin + rows * kTile;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  for (int a = 0; a < cols; ++a) {
    for (int c = 0; c < rows; ++c) {
      const int x = kMargin + a * kTile;
      const int y = kMargin + (rows - 1 - c) * kTile;
      const auto& elite = archive.at({a, c});
      svg << "<rect class=\"" << (elite ? "elite" : "empty") << "\" data-bin=\"" << a << ','
          << c << "\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << kTile << "\" height=\""
          << kTile << "\" stroke=\"#cccccc\" fill=\"";
      if (!elite) {
        svg << kBlank << "\"/>\n";
        continue;
      }
      svg << (coloring == TileColoring::Fitness
                  ? ramp(elite->fitness)
                  : std::string(kEncodingColors[static_cast<std::size_t>(elite->tag)]))
          << "\"><title>" << to_string(elite->tag) << " fitness " << fixed(elite->fitness)
          << "</title></rect>\n";
    }
  }
  svg << "<text x=\"" << kMargin << "\" y=\"" << height - 12
      << "\" font-family=\"sans-serif\" font-size=\"12\">built area &#8594;</text>\n";
  svg << "<text x=\"12\" y=\"" << height - kMargin
      << "\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 12 "
      << height - kMargin << ")\">buildings &#8594;</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string render_phenotype(const HeightGrid& grid) {
  const int legend = 4 * kTile;
  const int width = 2 * kMargin + grid.cols() * kTile + legend;
  const int height = std::max(2 * kMargin + grid.rows() * kTile, 2 * kMargin + 5 * kTile);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      svg << "<rect class=\"cell\" data-level=\"" << grid.at(r, c) << "\" x=\""
          << kMargin + c * kTile << "\" y=\"" << kMargin + r * kTile << "\" width=\"" << kTile
          << "\" height=\"" << kTile << "\" stroke=\"#ffffff\" fill=\""
          << kLevelShades[static_cast<std::size_t>(grid.at(r, c))] << "\"/>\n";
    }
  }
  const int lx = 2 * kMargin + grid.cols() * kTile - kMargin / 2;
  for (int level = 0; level <= kMaxLevel; ++level) {
    const int ly = kMargin + level * kTile;
    svg << "<rect class=\"legend\" x=\"" << lx << "\" y=\"" << ly << "\" width=\"" << kTile / 2
        << "\" height=\"" << kTile / 2 << "\" stroke=\"#999999\" fill=\""
        << kLevelShades[static_cast<std::size_t>(level)] << "\"/>\n";
    svg << "<text x=\"" << lx + kTile << "\" y=\"" << ly + kTile / 2
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << level * kMetersPerLevel
        << " m</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace massqd
