#include "massqd/map_elites.hpp"

#include <memory>
#include <stdexcept>

#include "massqd/error.hpp"

namespace massqd {

namespace {

struct Child {
  Genome genome;
  std::size_t encoding_index;
};

Elite evaluate(Child child, const Encoding& encoding, const FitnessFn& fitness_fn,
               std::size_t generation) {
  Elite e;
  e.phenotype = encoding.decode(child.genome);
  e.fitness = fitness_fn(e.phenotype);
  e.features = features(e.phenotype);
  e.tag = encoding.tag();
  e.encoding_index = child.encoding_index;
  e.birth_generation = generation;
  e.genome = std::move(child.genome);
  return e;
}

}  // namespace

RunResult run_map_elites(std::span<const EncodingConfig> encodings, const LoopConfig& loop,
                         const ArchiveSpec& archive_spec, const FitnessFn& fitness_fn,
                         const RunHooks& hooks) {
  if (encodings.empty()) throw ConfigError("encodings", "at least one encoding is required");
  if (loop.init_population < 1) throw ConfigError("loop.init_population", "must be >= 1");
  if (loop.children_per_generation < 1) {
    throw ConfigError("loop.children_per_generation", "must be >= 1");
  }
  if (hooks.cadence < 1) throw ConfigError("snapshot_cadence", "must be >= 1");

  std::vector<std::shared_ptr<const Encoding>> operators;
  for (std::size_t i = 0; i < encodings.size(); ++i) {
    validate(encodings[i], "encodings[" + std::to_string(i) + "]");
    operators.push_back(make_encoding(encodings[i]));
  }

  Rng rng(loop.rng_seed);
  RunResult result{Archive(archive_spec), {}};
  Archive& archive = result.archive;

  auto record = [&](std::size_t generation) {
    result.metrics.push_back(snapshot(archive, generation));
    if (hooks.on_metrics) hooks.on_metrics(result.metrics.back());
  };

  // Equal shares per encoding; the remainder goes to the first encodings.
  const std::size_t k = operators.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t share = loop.init_population / k + (i < loop.init_population % k ? 1 : 0);
    for (std::size_t n = 0; n < share; ++n) {
      archive.try_replace(evaluate({operators[i]->random(rng), i}, *operators[i], fitness_fn, 0));
    }
  }
  if (hooks.on_generation) hooks.on_generation(0, archive);
  record(0);

  std::vector<Child> children(loop.children_per_generation);
  std::vector<Elite> evaluated;
  evaluated.reserve(children.size());
  for (std::size_t gen = 1; gen <= loop.max_generations; ++gen) {
    std::uniform_int_distribution<std::size_t> pick(0, archive.filled() - 1);
    for (auto& child : children) {
      const Elite& parent = archive.filled_elite(pick(rng));
      child.encoding_index = parent.encoding_index;
      child.genome = operators[parent.encoding_index]->mutate(parent.genome, rng);
    }
    evaluated.clear();
    for (auto& child : children) {
      const auto& op = *operators[child.encoding_index];
      evaluated.push_back(evaluate(std::move(child), op, fitness_fn, gen));
    }
    for (auto& e : evaluated) archive.try_replace(std::move(e));

    if (hooks.on_generation) hooks.on_generation(gen, archive);
    if (gen % hooks.cadence == 0 || gen == loop.max_generations) record(gen);
  }
  return result;
}

}  // namespace massqd
