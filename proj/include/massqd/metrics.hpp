#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "massqd/encodings.hpp"
#include "massqd/phenotype.hpp"

namespace massqd {

class Archive;

double coverage(const Archive& archive);
double qd_score(const Archive& archive);
// QD-score divided by the number of filled bins; 0 when empty.
double mean_fitness(const Archive& archive);

inline constexpr double kDiversityNorm = 0.1;

// (sum_i |a_i - b_i|^0.1)^10. Not a metric: the triangle inequality fails.
// Throws std::invalid_argument on a length mismatch.
double l01_distance(std::span<const double> a, std::span<const double> b);

// Sum of l01_distance over unordered pairs of phenotypes.
double phenotypic_diversity(std::span<const HeightGrid> phenotypes);
double phenotypic_diversity(const Archive& archive);

struct RunMetrics {
  std::size_t generation = 0;
  double coverage = 0.0;
  double qd_score = 0.0;
  double mean_fitness = 0.0;
  double phenotypic_diversity = 0.0;
  std::array<double, kEncodingCount> proportions{};

  bool operator==(const RunMetrics&) const = default;
};

RunMetrics snapshot(const Archive& archive, std::size_t generation);

inline constexpr const char* kMetricsCsvHeader =
    "generation,coverage,qd_score,mean_fitness,phenotypic_diversity,prop_direct,"
    "prop_dictionary,prop_parametric,prop_cppn,prop_ca";

void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const RunMetrics& m);
// Reads a metrics CSV written by write_metrics_row. Throws ParseError.
std::vector<RunMetrics> read_metrics_csv(std::istream& in, const std::string& name);

}  // namespace massqd
