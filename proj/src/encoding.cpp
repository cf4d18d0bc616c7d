#include <stdexcept>

#include "massqd/encodings.hpp"
#include "massqd/error.hpp"

namespace massqd {

namespace {

constexpr std::array<std::string_view, kEncodingCount> kTagNames = {
    "direct", "dictionary", "parametric", "cppn", "ca"};

constexpr std::array<std::string_view, kActivationCount> kActivationNames = {
    "gaussian", "tanh", "sigmoid", "sine", "cosine", "zero", "one", "step"};

class DirectEncoding final : public Encoding {
 public:
  using Encoding::Encoding;

  Genome random(Rng& rng) const override { return random_direct(config().shape, rng); }
  HeightGrid decode(const Genome& g) const override {
    return decode_direct(std::get<DirectGenome>(g), config().shape);
  }
  Genome mutate(const Genome& g, Rng& rng) const override {
    return mutate_direct(std::get<DirectGenome>(g), config().p_mut, rng);
  }
  bool valid(const Genome& g) const override {
    const auto* d = std::get_if<DirectGenome>(&g);
    if (!d || d->heights.size() != static_cast<std::size_t>(config().shape.cells())) return false;
    for (auto h : d->heights) {
      if (h > kMaxLevel) return false;
    }
    return true;
  }
};

class DictionaryEncoding final : public Encoding {
 public:
  explicit DictionaryEncoding(const EncodingConfig& c)
      : Encoding(c), codec_(c.shape, c.block_rows, c.block_cols) {}

  Genome random(Rng& rng) const override { return codec_.random(rng); }
  HeightGrid decode(const Genome& g) const override {
    return codec_.decode(std::get<DictionaryGenome>(g));
  }
  Genome mutate(const Genome& g, Rng& rng) const override {
    return codec_.mutate(std::get<DictionaryGenome>(g), config().p_mut, rng);
  }
  bool valid(const Genome& g) const override {
    const auto* d = std::get_if<DictionaryGenome>(&g);
    return d && codec_.valid(*d);
  }

 private:
  DictionaryCodec codec_;
};

class ParametricEncoding final : public Encoding {
 public:
  using Encoding::Encoding;

  Genome random(Rng& rng) const override {
    return random_parametric(config().rectangles, config().shape, rng);
  }
  HeightGrid decode(const Genome& g) const override {
    return decode_parametric(std::get<ParametricGenome>(g), config().shape);
  }
  Genome mutate(const Genome& g, Rng& rng) const override {
    return mutate_parametric(std::get<ParametricGenome>(g), config().p_mut, config().sigma,
                             config().shape, rng);
  }
  bool valid(const Genome& g) const override {
    const auto* p = std::get_if<ParametricGenome>(&g);
    if (!p || p->rectangles.size() != static_cast<std::size_t>(config().rectangles)) return false;
    const auto& s = config().shape;
    for (const auto& r : p->rectangles) {
      if (r.w < 0 || r.l < 0 || r.x < 0 || r.y < 0) return false;
      if (r.x >= s.cols || r.y >= s.rows) return false;
      if (r.x + r.w > s.cols || r.y + r.l > s.rows) return false;
    }
    return true;
  }
};

class CppnEncoding final : public Encoding {
 public:
  using Encoding::Encoding;

  Genome random(Rng& rng) const override {
    return random_cppn(config().hidden_layers, config().neurons, rng);
  }
  HeightGrid decode(const Genome& g) const override {
    return decode_cppn(std::get<CppnGenome>(g), config().shape, config().thresholds);
  }
  Genome mutate(const Genome& g, Rng& rng) const override {
    return mutate_cppn(std::get<CppnGenome>(g), config().p_mut, config().sigma, rng);
  }
  bool valid(const Genome& g) const override {
    const auto* c = std::get_if<CppnGenome>(&g);
    if (!c || c->hidden_layers != config().hidden_layers || c->neurons != config().neurons) {
      return false;
    }
    return c->weights.size() == cppn_weight_count(c->hidden_layers, c->neurons) &&
           c->activations.size() == static_cast<std::size_t>(c->hidden_layers * c->neurons);
  }
};

class CaEncoding final : public Encoding {
 public:
  using Encoding::Encoding;

  Genome random(Rng& rng) const override {
    return random_ca(config().mask_size, config().shape, rng);
  }
  HeightGrid decode(const Genome& g) const override {
    return decode_ca(std::get<CaGenome>(g), config().steps, config().shape);
  }
  Genome mutate(const Genome& g, Rng& rng) const override {
    return mutate_ca(std::get<CaGenome>(g), config().p_mut, config().sigma, config().shape, rng);
  }
  bool valid(const Genome& g) const override {
    const auto* c = std::get_if<CaGenome>(&g);
    if (!c || c->mask_size != config().mask_size) return false;
    const auto& s = config().shape;
    return c->seed_x >= 0 && c->seed_x < s.cols && c->seed_y >= 0 && c->seed_y < s.rows &&
           c->mask.size() == static_cast<std::size_t>(c->mask_size * c->mask_size);
  }
};

}  // namespace

std::string_view to_string(EncodingTag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

std::optional<EncodingTag> parse_encoding_tag(std::string_view name) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<EncodingTag>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Activation a) {
  return kActivationNames[static_cast<std::size_t>(a)];
}

std::optional<Activation> parse_activation(std::string_view name) {
  for (std::size_t i = 0; i < kActivationNames.size(); ++i) {
    if (kActivationNames[i] == name) return static_cast<Activation>(i);
  }
  return std::nullopt;
}

void validate(const EncodingConfig& c, const std::string& path) {
  auto fail = [&](const char* field, const char* what) {
    throw ConfigError(path + "." + field, what);
  };
  if (c.shape.rows < 1) fail("shape.rows", "must be >= 1");
  if (c.shape.cols < 1) fail("shape.cols", "must be >= 1");
  if (!(c.p_mut >= 0.0 && c.p_mut <= 1.0)) fail("p_mut", "must lie in [0, 1]");

  switch (c.tag) {
    case EncodingTag::Direct:
      break;
    case EncodingTag::Dictionary:
      if (c.block_rows < 1) fail("block_rows", "must be >= 1");
      if (c.block_cols < 1) fail("block_cols", "must be >= 1");
      if (c.block_rows * c.block_cols > 9) fail("block_cols", "block_rows*block_cols must be <= 9");
      break;
    case EncodingTag::Parametric:
      if (!(c.sigma > 0.0)) fail("sigma", "must be > 0");
      if (c.rectangles < 0) fail("rectangles", "must be >= 0");
      break;
    case EncodingTag::Cppn:
      if (!(c.sigma > 0.0)) fail("sigma", "must be > 0");
      if (c.hidden_layers < 1 || c.hidden_layers > 2) fail("hidden_layers", "must be 1 or 2");
      if (c.neurons < 1) fail("neurons", "must be >= 1");
      if (!(c.thresholds[0] <= c.thresholds[1] && c.thresholds[1] <= c.thresholds[2])) {
        fail("thresholds", "must be ascending");
      }
      break;
    case EncodingTag::Ca:
      if (!(c.sigma > 0.0)) fail("sigma", "must be > 0");
      if (c.mask_size < 3 || c.mask_size % 2 == 0) fail("mask_size", "must be odd and >= 3");
      if (c.steps < 0) fail("steps", "must be >= 0");
      break;
  }
}

std::size_t dimensionality(const EncodingConfig& c) {
  switch (c.tag) {
    case EncodingTag::Direct:
      return static_cast<std::size_t>(c.shape.cells());
    case EncodingTag::Dictionary:
      return partition_grid(c.shape, c.block_rows, c.block_cols).size();
    case EncodingTag::Parametric:
      return 4 * static_cast<std::size_t>(c.rectangles);
    case EncodingTag::Cppn:
      return cppn_weight_count(c.hidden_layers, c.neurons) +
             static_cast<std::size_t>(c.hidden_layers * c.neurons);
    case EncodingTag::Ca:
      return static_cast<std::size_t>(c.mask_size * c.mask_size) + 2;
  }
  return 0;
}

std::shared_ptr<const Encoding> make_encoding(const EncodingConfig& config) {
  validate(config);
  switch (config.tag) {
    case EncodingTag::Direct:
      return std::make_shared<DirectEncoding>(config);
    case EncodingTag::Dictionary:
      return std::make_shared<DictionaryEncoding>(config);
    case EncodingTag::Parametric:
      return std::make_shared<ParametricEncoding>(config);
    case EncodingTag::Cppn:
      return std::make_shared<CppnEncoding>(config);
    case EncodingTag::Ca:
      return std::make_shared<CaEncoding>(config);
  }
  throw std::logic_error("unknown encoding tag");
}

}  // namespace massqd
