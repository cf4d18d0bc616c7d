#include "massqd/genome_io.hpp"

#include <string>

#include "massqd/error.hpp"

namespace massqd {

using nlohmann::json;

namespace {

const json& field(const json& doc, const std::string& key, const std::string& location) {
  if (!doc.is_object()) throw ParseError(location.empty() ? "/" : location, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(location + "/" + key, "missing field");
  return *it;
}

template <typename T>
T read(const json& doc, const std::string& key, const std::string& location) {
  const json& v = field(doc, key, location);
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw ParseError(location + "/" + key, e.what());
  }
}

}  // namespace

json genome_to_json(const Genome& genome) {
  json out;
  out["encoding"] = std::string(to_string(tag_of(genome)));
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, DirectGenome>) {
          auto& heights = out["heights"] = json::array();
          for (auto h : g.heights) heights.push_back(int{h});
        } else if constexpr (std::is_same_v<T, DictionaryGenome>) {
          out["block_rows"] = g.block_rows;
          out["block_cols"] = g.block_cols;
          out["block_indices"] = g.block_indices;
        } else if constexpr (std::is_same_v<T, ParametricGenome>) {
          auto& rects = out["rectangles"] = json::array();
          for (const auto& r : g.rectangles) rects.push_back({r.x, r.y, r.w, r.l});
        } else if constexpr (std::is_same_v<T, CppnGenome>) {
          out["hidden_layers"] = g.hidden_layers;
          out["neurons"] = g.neurons;
          out["weights"] = g.weights;
          auto& acts = out["activations"] = json::array();
          for (auto a : g.activations) acts.push_back(std::string(to_string(a)));
        } else {
          out["seed"] = {g.seed_x, g.seed_y};
          out["mask_size"] = g.mask_size;
          out["mask"] = g.mask;
        }
      },
      genome);
  return out;
}

Genome genome_from_json(const json& doc, const std::string& location) {
  const auto name = read<std::string>(doc, "encoding", location);
  const auto tag = parse_encoding_tag(name);
  if (!tag) throw ParseError(location + "/encoding", "unknown encoding '" + name + "'");

  switch (*tag) {
    case EncodingTag::Direct: {
      DirectGenome g;
      for (int h : read<std::vector<int>>(doc, "heights", location)) {
        if (h < 0 || h > kMaxLevel) throw ParseError(location + "/heights", "level outside 0..3");
        g.heights.push_back(static_cast<std::uint8_t>(h));
      }
      return g;
    }
    case EncodingTag::Dictionary:
      return DictionaryGenome{read<int>(doc, "block_rows", location),
                              read<int>(doc, "block_cols", location),
                              read<std::vector<std::uint32_t>>(doc, "block_indices", location)};
    case EncodingTag::Parametric: {
      ParametricGenome g;
      for (const auto& r : read<std::vector<std::array<int, 4>>>(doc, "rectangles", location)) {
        g.rectangles.push_back({r[0], r[1], r[2], r[3]});
      }
      return g;
    }
    case EncodingTag::Cppn: {
      CppnGenome g;
      g.hidden_layers = read<int>(doc, "hidden_layers", location);
      g.neurons = read<int>(doc, "neurons", location);
      g.weights = read<std::vector<double>>(doc, "weights", location);
      for (const auto& a : read<std::vector<std::string>>(doc, "activations", location)) {
        const auto act = parse_activation(a);
        if (!act) throw ParseError(location + "/activations", "unknown activation '" + a + "'");
        g.activations.push_back(*act);
      }
      return g;
    }
    case EncodingTag::Ca: {
      CaGenome g;
      const auto seed = read<std::array<int, 2>>(doc, "seed", location);
      g.seed_x = seed[0];
      g.seed_y = seed[1];
      g.mask_size = read<int>(doc, "mask_size", location);
      g.mask = read<std::vector<double>>(doc, "mask", location);
      return g;
    }
  }
  throw ParseError(location, "unreachable encoding");
}

}  // namespace massqd
