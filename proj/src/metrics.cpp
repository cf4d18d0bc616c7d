#include "massqd/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "massqd/archive.hpp"
#include "massqd/error.hpp"

namespace massqd {

double coverage(const Archive& archive) {
  return static_cast<double>(archive.filled()) / static_cast<double>(archive.total_bins());
}

double qd_score(const Archive& archive) {
  double sum = 0.0;
  for (const Elite* e : archive.elites()) sum += e->fitness;
  return sum;
}

double mean_fitness(const Archive& archive) {
  return archive.empty() ? 0.0 : qd_score(archive) / static_cast<double>(archive.filled());
}

double l01_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("l01_distance: length mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::pow(std::fabs(a[i] - b[i]), kDiversityNorm);
  }
  return std::pow(sum, 1.0 / kDiversityNorm);
}

double phenotypic_diversity(std::span<const HeightGrid> phenotypes) {
  // Level differences are integers in 0..3, so the per-cell terms are tabled.
  std::array<double, kMaxLevel + 1> term{};
  for (int d = 0; d <= kMaxLevel; ++d) term[d] = std::pow(static_cast<double>(d), kDiversityNorm);

  double total = 0.0;
  for (std::size_t i = 0; i < phenotypes.size(); ++i) {
    const auto a = phenotypes[i].cells();
    for (std::size_t j = i + 1; j < phenotypes.size(); ++j) {
      const auto b = phenotypes[j].cells();
      if (a.size() != b.size()) throw std::invalid_argument("phenotype shapes differ");
      double sum = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) sum += term[std::abs(int{a[k]} - int{b[k]})];
      total += std::pow(sum, 1.0 / kDiversityNorm);
    }
  }
  return total;
}

double phenotypic_diversity(const Archive& archive) {
  std::vector<HeightGrid> phenotypes;
  phenotypes.reserve(archive.filled());
  for (const Elite* e : archive.elites()) phenotypes.push_back(e->phenotype);
  return phenotypic_diversity(phenotypes);
}

RunMetrics snapshot(const Archive& archive, std::size_t generation) {
  RunMetrics m;
  m.generation = generation;
  m.coverage = coverage(archive);
  m.qd_score = qd_score(archive);
  m.mean_fitness = mean_fitness(archive);
  m.phenotypic_diversity = phenotypic_diversity(archive);
  m.proportions = encoding_proportions(archive);
  return m;
}

void write_metrics_header(std::ostream& out) { out << kMetricsCsvHeader << '\n'; }

void write_metrics_row(std::ostream& out, const RunMetrics& m) {
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    out << buf;
  };
  out << m.generation;
  put(m.coverage);
  put(m.qd_score);
  put(m.mean_fitness);
  put(m.phenotypic_diversity);
  for (double p : m.proportions) put(p);
  out << '\n';
}

std::vector<RunMetrics> read_metrics_csv(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line) || line != kMetricsCsvHeader) {
    throw ParseError(name + ":1", "unexpected metrics header");
  }
  std::vector<RunMetrics> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        fields.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError(name + ":" + std::to_string(lineno), "bad number '" + cell + "'");
      }
    }
    if (fields.size() != 5 + kEncodingCount) {
      throw ParseError(name + ":" + std::to_string(lineno), "expected 10 fields");
    }
    RunMetrics m;
    m.generation = static_cast<std::size_t>(fields[0]);
    m.coverage = fields[1];
    m.qd_score = fields[2];
    m.mean_fitness = fields[3];
    m.phenotypic_diversity = fields[4];
    for (std::size_t k = 0; k < kEncodingCount; ++k) m.proportions[k] = fields[5 + k];
    rows.push_back(m);
  }
  return rows;
}

}  // namespace massqd
