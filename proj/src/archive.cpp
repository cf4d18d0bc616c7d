#include "massqd/archive.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "massqd/error.hpp"
#include "massqd/genome_io.hpp"

namespace massqd {

using nlohmann::json;

std::vector<double> AxisSpec::edges() const {
  std::vector<double> out(static_cast<std::size_t>(bins) + 1);
  for (int k = 0; k <= bins; ++k) out[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / bins;
  return out;
}

int bin_index(double value, std::span<const double> edges) {
  const int bins = static_cast<int>(edges.size()) - 1;
  const auto first_not_below = std::lower_bound(edges.begin(), edges.end(), value);
  const int bin = static_cast<int>(first_not_below - edges.begin()) - 1;
  return std::clamp(bin, 0, bins - 1);
}

Archive::Archive(ArchiveSpec spec)
    : spec_(spec), area_edges_(spec.area.edges()), count_edges_(spec.count.edges()) {
  if (spec.area.bins < 1 || spec.count.bins < 1) {
    throw std::invalid_argument("archive needs at least one bin per axis");
  }
  if (!(spec.area.lo < spec.area.hi) || !(spec.count.lo < spec.count.hi)) {
    throw std::invalid_argument("archive ranges must be increasing");
  }
  bins_.resize(static_cast<std::size_t>(spec.area.bins) * static_cast<std::size_t>(spec.count.bins));
}

BinCoord Archive::bin_of(const Features& f) const {
  return {bin_index(f.built_area, area_edges_), bin_index(f.building_count, count_edges_)};
}

bool Archive::try_replace(Elite candidate) {
  const std::size_t s = slot(bin_of(candidate.features));
  auto& occupant = bins_[s];
  if (!occupant) {
    occupant = std::move(candidate);
    filled_.push_back(s);
    return true;
  }
  if (occupant->fitness < candidate.fitness) {
    occupant = std::move(candidate);
    return true;
  }
  return false;
}

const std::optional<Elite>& Archive::at(BinCoord bin) const {
  if (bin.area < 0 || bin.area >= area_bins() || bin.count < 0 || bin.count >= count_bins()) {
    throw std::out_of_range("bin outside archive");
  }
  return bins_[slot(bin)];
}

std::vector<const Elite*> Archive::elites() const {
  std::vector<const Elite*> out;
  out.reserve(filled_.size());
  for (const auto& b : bins_) {
    if (b) out.push_back(&*b);
  }
  return out;
}

std::array<double, kEncodingCount> encoding_proportions(const Archive& archive) {
  std::array<double, kEncodingCount> out{};
  if (archive.empty()) return out;
  for (std::size_t i = 0; i < archive.filled(); ++i) {
    out[static_cast<std::size_t>(archive.filled_elite(i).tag)] += 1.0;
  }
  for (auto& v : out) v /= static_cast<double>(archive.filled());
  return out;
}

namespace {

json axis_to_json(const AxisSpec& axis) {
  return {{"bins", axis.bins}, {"lo", axis.lo}, {"hi", axis.hi}, {"edges", axis.edges()}};
}

AxisSpec axis_from_json(const json& doc, const std::string& where) {
  try {
    return {doc.at("bins").get<int>(), doc.at("lo").get<double>(), doc.at("hi").get<double>()};
  } catch (const json::exception& e) {
    throw ParseError(where, e.what());
  }
}

}  // namespace

json archive_to_json(const Archive& archive) {
  json out;
  out["area"] = axis_to_json(archive.spec().area);
  out["count"] = axis_to_json(archive.spec().count);
  auto& bins = out["bins"] = json::array();
  const auto elites = archive.elites();
  for (const Elite* e : elites) {
    const auto b = archive.bin_of(e->features);
    bins.push_back({{"bin", {b.area, b.count}},
                    {"fitness", e->fitness},
                    {"features", {e->features.built_area, e->features.building_count}},
                    {"encoding", std::string(to_string(e->tag))},
                    {"encoding_index", e->encoding_index},
                    {"birth_generation", e->birth_generation},
                    {"phenotype", to_json(e->phenotype)},
                    {"genome", genome_to_json(e->genome)}});
  }
  return out;
}

Archive archive_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("/", "archive snapshot must be an object");
  if (!doc.contains("area")) throw ParseError("/area", "missing field");
  if (!doc.contains("count")) throw ParseError("/count", "missing field");
  if (!doc.contains("bins") || !doc["bins"].is_array()) throw ParseError("/bins", "expected an array");

  ArchiveSpec spec{axis_from_json(doc["area"], "/area"), axis_from_json(doc["count"], "/count")};
  std::optional<Archive> archive;
  try {
    archive.emplace(spec);
  } catch (const std::invalid_argument& e) {
    throw ParseError("/area", e.what());
  }

  const auto& bins = doc["bins"];
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const std::string where = "/bins/" + std::to_string(i);
    const auto& item = bins[i];
    try {
      Elite e;
      e.genome = genome_from_json(item.at("genome"), where + "/genome");
      e.phenotype = grid_from_json(item.at("phenotype"));
      e.fitness = item.at("fitness").get<double>();
      const auto feats = item.at("features").get<std::array<int, 2>>();
      e.features = {feats[0], feats[1]};
      const auto name = item.at("encoding").get<std::string>();
      const auto tag = parse_encoding_tag(name);
      if (!tag) throw ParseError(where + "/encoding", "unknown encoding '" + name + "'");
      e.tag = *tag;
      e.encoding_index = item.value("encoding_index", std::size_t{0});
      e.birth_generation = item.value("birth_generation", std::size_t{0});

      if (features(e.phenotype) != e.features) {
        throw ParseError(where + "/features", "features do not match the phenotype");
      }
      const auto b = item.at("bin").get<std::array<int, 2>>();
      if (archive->bin_of(e.features) != BinCoord{b[0], b[1]}) {
        throw ParseError(where + "/bin", "features map to a different bin");
      }
      if (archive->at({b[0], b[1]})) throw ParseError(where + "/bin", "duplicate bin");
      archive->try_replace(std::move(e));
    } catch (const json::exception& ex) {
      throw ParseError(where, ex.what());
    } catch (const std::invalid_argument& ex) {
      throw ParseError(where + "/phenotype", ex.what());
    }
  }
  return std::move(*archive);
}

}  // namespace massqd
