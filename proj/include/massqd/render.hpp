#pragma once

#include <string>

#include "json.hpp"
#include "massqd/phenotype.hpp"

namespace massqd {

enum class TileColoring { Fitness, Encoding };

// SVG of the archive grid: built-area bins left to right, building-count bins
// bottom to top. Empty bins are blank. Throws ParseError on a malformed
// snapshot.
std::string render_archive(const nlohmann::json& snapshot,
                           TileColoring coloring = TileColoring::Fitness);

// Top-down SVG tile map of the height levels with a meter legend.
std::string render_phenotype(const HeightGrid& grid);

}  // namespace massqd
