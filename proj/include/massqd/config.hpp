#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "massqd/archive.hpp"
#include "massqd/encodings.hpp"
#include "massqd/map_elites.hpp"

namespace massqd {

// Everything needed to reproduce a batch of replicates.
//
// File format: one JSON object, every key optional except "encodings".
// Unknown keys are rejected. Schema (defaults shown):
//
//   {
//     "label": "<encoding names joined by '+'>",
//     "encodings": [{"type": "direct", "p_mut": 0.05}, ...],
//     "grid": {"rows": 11, "cols": 14},
//     "inflow_axis": "rows",                 // or "cols"
//     "loop": {"init_population": 100, "children_per_generation": 10,
//              "max_generations": 50000},
//     "archive": {"area": {"bins": 16, "lo": 0, "hi": 154},
//                 "count": {"bins": 16, "lo": 0, "hi": 16}},
//     "replicates": 10, "base_seed": 1, "snapshot_cadence": 100,
//     "output_dir": "runs/default", "workers": 1
//   }
//
// Encoding keys by type: all take "p_mut"; parametric, cppn and ca take
// "sigma"; dictionary "block_rows"/"block_cols"; parametric "rectangles";
// cppn "hidden_layers"/"neurons"/"thresholds"; ca "mask_size"/"steps".
struct ExperimentConfig {
  std::string label;
  std::vector<EncodingConfig> encodings;
  GridShape grid;
  InflowAxis inflow = InflowAxis::RowAxis;
  LoopConfig loop;
  ArchiveSpec archive;
  std::size_t replicates = 10;
  std::uint64_t base_seed = 1;
  std::size_t snapshot_cadence = 100;
  std::string output_dir = "runs/default";
  std::size_t workers = 1;  // 0: one per hardware thread

  bool operator==(const ExperimentConfig&) const = default;
};

// Throws ConfigError naming the offending field path.
ExperimentConfig config_from_json(const nlohmann::json& doc);
EncodingConfig encoding_from_json(const nlohmann::json& doc, const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& config);
nlohmann::json encoding_to_json(const EncodingConfig& config);
void validate(const ExperimentConfig& config);

// Applies "dot.path=value" to a JSON document. Numeric segments index arrays;
// the value is parsed as JSON and falls back to a plain string.
void apply_override(nlohmann::json& doc, std::string_view assignment);

// Reads a JSON file. Throws IoError when it cannot be opened and ConfigError
// when it is not valid JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);

ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides = {});

// FNV-1a over the canonical config without output_dir and workers.
std::string config_hash(const ExperimentConfig& config);

}  // namespace massqd
