#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "massqd/phenotype.hpp"

namespace massqd {

using Rng = std::mt19937_64;

// Order matches the alternatives of Genome and the prop_* metric columns.
enum class EncodingTag : std::uint8_t { Direct, Dictionary, Parametric, Cppn, Ca };
inline constexpr std::size_t kEncodingCount = 5;
inline constexpr std::array<EncodingTag, kEncodingCount> kAllEncodings = {
    EncodingTag::Direct, EncodingTag::Dictionary, EncodingTag::Parametric, EncodingTag::Cppn,
    EncodingTag::Ca};

std::string_view to_string(EncodingTag tag);
std::optional<EncodingTag> parse_encoding_tag(std::string_view name);

// ---------------------------------------------------------------------------
// Genomes

struct DirectGenome {
  std::vector<std::uint8_t> heights;  // row-major, one level per cell

  bool operator==(const DirectGenome&) const = default;
};

struct DictionaryGenome {
  int block_rows = 2;
  int block_cols = 2;
  std::vector<std::uint32_t> block_indices;  // one dictionary index per cell group

  bool operator==(const DictionaryGenome&) const = default;
};

// Axis-aligned footprint that raises every covered cell by one level.
struct Rectangle {
  int x = 0;  // column origin
  int y = 0;  // row origin
  int w = 0;  // width in columns
  int l = 0;  // length in rows

  bool operator==(const Rectangle&) const = default;
};

struct ParametricGenome {
  std::vector<Rectangle> rectangles;

  bool operator==(const ParametricGenome&) const = default;
};

enum class Activation : std::uint8_t { Gaussian, Tanh, Sigmoid, Sine, Cosine, Zero, One, Step };
inline constexpr int kActivationCount = 8;

std::string_view to_string(Activation a);
std::optional<Activation> parse_activation(std::string_view name);
double activate(Activation a, double z);

struct CppnGenome {
  int hidden_layers = 1;
  int neurons = 16;
  std::vector<double> weights;
  std::vector<Activation> activations;  // one per hidden neuron, layer-major

  bool operator==(const CppnGenome&) const = default;
};

struct CaGenome {
  int seed_x = 0;  // column
  int seed_y = 0;  // row
  int mask_size = 3;
  std::vector<double> mask;  // mask_size x mask_size, row-major, centred on the cell

  bool operator==(const CaGenome&) const = default;
};

// Alternative index equals static_cast<int>(EncodingTag).
using Genome = std::variant<DirectGenome, DictionaryGenome, ParametricGenome, CppnGenome, CaGenome>;

inline EncodingTag tag_of(const Genome& g) { return static_cast<EncodingTag>(g.index()); }

// ---------------------------------------------------------------------------
// Configuration

// Hyperparameters for every encoding; fields not used by `tag` are ignored.
struct EncodingConfig {
  EncodingTag tag = EncodingTag::Direct;
  GridShape shape;
  double p_mut = 0.05;
  double sigma = 0.3;
  int block_rows = 2;  // dictionary
  int block_cols = 2;
  int rectangles = 8;  // parametric
  int hidden_layers = 1;  // cppn
  int neurons = 16;
  std::array<double, 3> thresholds = {-0.5, 0.0, 0.5};
  int mask_size = 3;  // ca
  int steps = 10;

  bool operator==(const EncodingConfig&) const = default;
};

// Throws ConfigError naming `path + "." + field` for the first violation.
void validate(const EncodingConfig& config, const std::string& path = "encoding");

// Degrees of freedom of the genome.
std::size_t dimensionality(const EncodingConfig& config);

// ---------------------------------------------------------------------------
// Direct encoding: one gene per cell.

DirectGenome random_direct(GridShape shape, Rng& rng);
HeightGrid decode_direct(const DirectGenome& g, GridShape shape);
// Each gene moves one level up or down with probability p_mut. A gene sitting
// on a bound can only move inward, so a selected gene always changes.
DirectGenome mutate_direct(DirectGenome g, double p_mut, Rng& rng);

// ---------------------------------------------------------------------------
// Dictionary encoding.

using Block = std::vector<std::uint8_t>;  // row-major levels of one cell group

// All 4^(rows*cols) blocks, ordered lexicographically over row-major levels.
// Throws ConfigError unless 1 <= rows*cols <= 9.
std::vector<Block> build_dictionary(int block_rows, int block_cols);

// Sum of absolute level differences between two equally sized blocks.
int block_distance(const Block& a, const Block& b);

inline constexpr int kDictionaryMaxStep = 5;

struct CellGroup {
  int row = 0;
  int col = 0;
  int rows = 0;
  int cols = 0;
};

// Row-major tiling of the grid into block_rows x block_cols groups. The last
// band and column strip shrink to whatever remains.
std::vector<CellGroup> partition_grid(GridShape shape, int block_rows, int block_cols);

class DictionaryCodec {
 public:
  DictionaryCodec(GridShape shape, int block_rows, int block_cols);

  std::size_t group_count() const { return groups_.size(); }
  const std::vector<CellGroup>& groups() const { return groups_; }
  // Number of dictionary entries available to group `g`.
  std::uint32_t entries(std::size_t g) const;
  const Block& block(std::size_t g, std::uint32_t index) const;

  DictionaryGenome random(Rng& rng) const;
  HeightGrid decode(const DictionaryGenome& g) const;
  // Replaces each selected index by a uniform choice among blocks at
  // distance 1..5 from the current block.
  DictionaryGenome mutate(DictionaryGenome g, double p_mut, Rng& rng) const;
  // Indices within distance 1..5 of `index` for group `g`, ascending.
  std::vector<std::uint32_t> transitions(std::size_t g, std::uint32_t index) const;
  // Per-group dictionary lookup of the grid's sub-blocks.
  DictionaryGenome lookup(const HeightGrid& grid) const;
  bool valid(const DictionaryGenome& g) const;

 private:
  GridShape shape_;
  int block_rows_;
  int block_cols_;
  std::vector<CellGroup> groups_;
  std::vector<std::vector<Block>> dictionaries_;  // indexed by shape slot
  std::vector<std::size_t> group_dictionary_;     // group -> dictionaries_ slot
};

// ---------------------------------------------------------------------------
// Parametric encoding: a fixed number of stacked rectangles.

ParametricGenome random_parametric(int count, GridShape shape, Rng& rng);
HeightGrid decode_parametric(const ParametricGenome& g, GridShape shape);
// Translates, then shrinks, the rectangle so it lies inside the grid.
Rectangle clamp_rectangle(Rectangle r, GridShape shape);
// Each of the 4n parameters is perturbed with probability p_mut by a
// normal draw rounded away from zero, then every rectangle is clamped.
ParametricGenome mutate_parametric(ParametricGenome g, double p_mut, double sigma,
                                   GridShape shape, Rng& rng);

// ---------------------------------------------------------------------------
// CPPN encoding: fixed feed-forward net queried once per cell.
//
// Inputs are (x, y, 1) with x, y scaled to [-1, 1]. Every hidden layer is
// fully connected to the previous one, the single output neuron uses tanh and
// its value is quantized by three ascending thresholds.

std::size_t cppn_weight_count(int hidden_layers, int neurons);
CppnGenome random_cppn(int hidden_layers, int neurons, Rng& rng);
double evaluate_cppn(const CppnGenome& g, double x, double y);
HeightGrid decode_cppn(const CppnGenome& g, GridShape shape,
                       const std::array<double, 3>& thresholds);
CppnGenome mutate_cppn(CppnGenome g, double p_mut, double sigma, Rng& rng);

// ---------------------------------------------------------------------------
// Cellular automaton encoding: a seed cell grown by a weighted neighbourhood
// rule for a fixed number of synchronous steps.

CaGenome random_ca(int mask_size, GridShape shape, Rng& rng);
HeightGrid decode_ca(const CaGenome& g, int steps, GridShape shape);
CaGenome mutate_ca(CaGenome g, double p_mut, double sigma, GridShape shape, Rng& rng);

// ---------------------------------------------------------------------------
// Uniform interface used by the search loop.

class Encoding {
 public:
  explicit Encoding(EncodingConfig config) : config_(std::move(config)) {}
  virtual ~Encoding() = default;

  const EncodingConfig& config() const { return config_; }
  EncodingTag tag() const { return config_.tag; }
  std::size_t dimensionality() const { return massqd::dimensionality(config_); }

  virtual Genome random(Rng& rng) const = 0;
  virtual HeightGrid decode(const Genome& g) const = 0;
  virtual Genome mutate(const Genome& g, Rng& rng) const = 0;
  // True when `g` has this encoding's tag and satisfies its invariants.
  virtual bool valid(const Genome& g) const = 0;

 private:
  EncodingConfig config_;
};

// Validates the config first; throws ConfigError.
std::shared_ptr<const Encoding> make_encoding(const EncodingConfig& config);

}  // namespace massqd
