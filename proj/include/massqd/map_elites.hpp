#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "massqd/archive.hpp"
#include "massqd/encodings.hpp"
#include "massqd/metrics.hpp"

namespace massqd {

struct LoopConfig {
  std::size_t init_population = 100;
  std::size_t children_per_generation = 10;
  std::size_t max_generations = 50000;
  std::uint64_t rng_seed = 0;

  bool operator==(const LoopConfig&) const = default;
};

using FitnessFn = std::function<double(const HeightGrid&)>;

struct RunHooks {
  // Metrics are recorded at generation 0, every `cadence` generations and at
  // the final generation.
  std::size_t cadence = 100;
  std::function<void(const RunMetrics&)> on_metrics;
  // Called after initialisation (generation 0) and after every generation.
  std::function<void(std::size_t generation, const Archive&)> on_generation;
};

struct RunResult {
  Archive archive;
  std::vector<RunMetrics> metrics;
};

// MAP-Elites over one or more encodings sharing one archive. With several
// encodings the initial population is split evenly between them and every
// child is mutated by its parent's encoding. Each generation draws its
// parents uniformly (with replacement) from the bins filled at the start of
// the generation, evaluates all children, then inserts them in child order.
RunResult run_map_elites(std::span<const EncodingConfig> encodings, const LoopConfig& loop,
                         const ArchiveSpec& archive_spec, const FitnessFn& fitness_fn,
                         const RunHooks& hooks = {});

}  // namespace massqd
