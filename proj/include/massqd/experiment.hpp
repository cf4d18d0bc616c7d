#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "massqd/config.hpp"
#include "massqd/metrics.hpp"
#include "massqd/pareto.hpp"
#include "massqd/stats.hpp"

namespace massqd {

struct ReplicateRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string metrics_file;  // relative to the manifest directory
  std::string archive_file;
};

struct Manifest {
  ExperimentConfig config;
  std::string config_hash;
  std::vector<ReplicateRecord> replicates;
  std::string created_at;  // the only non-deterministic field
};

nlohmann::json manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const nlohmann::json& doc);
Manifest load_manifest(const std::filesystem::path& path);

using ProgressFn = std::function<void(const std::string&)>;

// Runs `replicates` independent runs seeded base_seed + r and writes
//   <output_dir>/replicate_<r>/metrics.csv
//   <output_dir>/replicate_<r>/archive.json
//   <output_dir>/manifest.json
// Throws ConfigError or IoError.
Manifest run_experiment(const ExperimentConfig& config, const ProgressFn& progress = {});

// One replicate without touching the file system.
RunResult run_replicate(const ExperimentConfig& config, std::size_t replicate,
                        const RunHooks& hooks = {});

// ---------------------------------------------------------------------------
// Aggregation across experiments.

enum class SummaryMetric { MeanFitness, Coverage, QdScore, PhenotypicDiversity };
inline constexpr std::array<SummaryMetric, 4> kSummaryMetrics = {
    SummaryMetric::MeanFitness, SummaryMetric::Coverage, SummaryMetric::QdScore,
    SummaryMetric::PhenotypicDiversity};
std::string_view to_string(SummaryMetric m);
double value_of(const RunMetrics& m, SummaryMetric which);

struct ConfigurationSummary {
  std::string label;
  std::vector<RunMetrics> finals;  // last metrics row of every replicate
  std::array<double, 4> mean{};    // indexed like kSummaryMetrics
  std::array<double, 4> stddev{};  // sample standard deviation
  std::array<double, kEncodingCount> mean_proportions{};
};

struct Summary {
  std::vector<ConfigurationSummary> configurations;
  // p_values[metric][i][j]: Welch test between configurations i and j; NaN
  // when either has fewer than two replicates.
  std::array<std::vector<std::vector<double>>, 4> p_values;
};

ConfigurationSummary summarize(std::string label, std::vector<RunMetrics> finals);
Summary aggregate(std::vector<ConfigurationSummary> configurations);
// Reads every manifest's replicate metrics. Throws IoError naming a missing file.
Summary aggregate(std::span<const std::filesystem::path> manifests);

// summary.csv, proportions.csv and pvalues_<metric>.csv in `dir`.
void write_summary(const Summary& summary, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Hyperparameter sweeps.
//
// File format: {"base": <experiment config with one encoding>,
//               "grid": {"<encoding key>": [values...], ...},
//               "select": 4}
struct SweepSpec {
  ExperimentConfig base;
  std::vector<std::pair<std::string, std::vector<nlohmann::json>>> grid;
  std::size_t select = 4;
};

SweepSpec sweep_from_json(const nlohmann::json& doc);

struct SweepPoint {
  nlohmann::json parameters;  // grid key -> value
  ObjectivePoint objectives;  // replicate means of final fitness / diversity
  std::size_t front = 0;      // 1-based rank
  bool selected = false;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  std::vector<std::size_t> selected;  // indices in selection order
};

// Cartesian product of the grid axes, first axis varying slowest.
std::vector<ExperimentConfig> expand_sweep(const SweepSpec& spec);

// Ranks already-evaluated points.
SweepReport rank_sweep(std::vector<SweepPoint> points, std::size_t select = 4);

// Runs every grid point into <output_dir>/point_<i>, then writes
// sweep_report.json and sweep_report.csv.
SweepReport run_sweep(const SweepSpec& spec, const std::filesystem::path& output_dir,
                      const ProgressFn& progress = {});

}  // namespace massqd
