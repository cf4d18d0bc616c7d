#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "massqd/encodings.hpp"
#include "massqd/phenotype.hpp"

namespace massqd {

// Uniformly spaced bin edges over [lo, hi].
struct AxisSpec {
  int bins = 16;
  double lo = 0.0;
  double hi = 16.0;

  std::vector<double> edges() const;
  bool operator==(const AxisSpec&) const = default;
};

// Defaults: 16 built-area bins over [0, 154] and 16 building-count bins over
// [0, 16], the last count bin absorbing everything above.
struct ArchiveSpec {
  AxisSpec area{16, 0.0, 154.0};
  AxisSpec count{16, 0.0, 16.0};

  bool operator==(const ArchiveSpec&) const = default;
};

// Bin of `value` given ascending edges. A value on a shared edge goes to the
// lower bin; values outside the range saturate to the first or last bin.
int bin_index(double value, std::span<const double> edges);

struct BinCoord {
  int area = 0;
  int count = 0;

  bool operator==(const BinCoord&) const = default;
};

struct Elite {
  Genome genome;
  HeightGrid phenotype;
  double fitness = 0.0;
  Features features;
  EncodingTag tag = EncodingTag::Direct;
  std::size_t encoding_index = 0;  // position in the run's encoding list
  std::size_t birth_generation = 0;
};

// MAP-Elites grid over (built area, building count), one elite per bin.
class Archive {
 public:
  explicit Archive(ArchiveSpec spec = {});

  const ArchiveSpec& spec() const { return spec_; }
  const std::vector<double>& area_edges() const { return area_edges_; }
  const std::vector<double>& count_edges() const { return count_edges_; }
  int area_bins() const { return spec_.area.bins; }
  int count_bins() const { return spec_.count.bins; }
  std::size_t total_bins() const { return bins_.size(); }
  std::size_t filled() const { return filled_.size(); }
  bool empty() const { return filled_.empty(); }

  BinCoord bin_of(const Features& f) const;

  // Inserts into an empty bin or replaces a strictly worse occupant.
  // Equal fitness keeps the incumbent.
  bool try_replace(Elite candidate);

  const std::optional<Elite>& at(BinCoord bin) const;

  // Filled bins in the order they were first occupied.
  std::size_t filled_bin(std::size_t i) const { return filled_[i]; }
  const Elite& filled_elite(std::size_t i) const { return *bins_[filled_[i]]; }

  BinCoord coord_of_slot(std::size_t slot) const {
    return {static_cast<int>(slot / static_cast<std::size_t>(count_bins())),
            static_cast<int>(slot % static_cast<std::size_t>(count_bins()))};
  }

  // Elites in bin-major order (area, then count).
  std::vector<const Elite*> elites() const;

 private:
  std::size_t slot(BinCoord b) const {
    return static_cast<std::size_t>(b.area) * static_cast<std::size_t>(count_bins()) +
           static_cast<std::size_t>(b.count);
  }

  ArchiveSpec spec_;
  std::vector<double> area_edges_;
  std::vector<double> count_edges_;
  std::vector<std::optional<Elite>> bins_;
  std::vector<std::size_t> filled_;
};

// Share of filled bins held by each encoding, indexed by EncodingTag.
// All zero for an empty archive.
std::array<double, kEncodingCount> encoding_proportions(const Archive& archive);

// Snapshot document: spec, edges, and every filled bin's elite.
nlohmann::json archive_to_json(const Archive& archive);
// Throws ParseError naming the offending location.
Archive archive_from_json(const nlohmann::json& doc);

}  // namespace massqd
