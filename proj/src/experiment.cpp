#include "massqd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "massqd/error.hpp"

namespace massqd {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string replicate_dir(std::size_t r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "replicate_%03zu", r);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void close_checked(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

// Runs jobs 0..count-1 on up to `workers` threads; rethrows the first failure.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& job) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

json manifest_to_json(const Manifest& m) {
  json reps = json::array();
  json seeds = json::array();
  for (const auto& r : m.replicates) {
    reps.push_back({{"index", r.index},
                    {"seed", r.seed},
                    {"metrics", r.metrics_file},
                    {"archive", r.archive_file}});
    seeds.push_back(r.seed);
  }
  return {{"config", config_to_json(m.config)},
          {"config_hash", m.config_hash},
          {"seeds", seeds},
          {"replicates", reps},
          {"created_at", m.created_at}};
}

Manifest manifest_from_json(const json& doc) {
  Manifest m;
  try {
    m.config = config_from_json(doc.at("config"));
    m.config_hash = doc.at("config_hash").get<std::string>();
    m.created_at = doc.value("created_at", std::string{});
    for (const auto& r : doc.at("replicates")) {
      m.replicates.push_back({r.at("index").get<std::size_t>(), r.at("seed").get<std::uint64_t>(),
                              r.at("metrics").get<std::string>(),
                              r.at("archive").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw ParseError("manifest", e.what());
  }
  return m;
}

Manifest load_manifest(const fs::path& path) { return manifest_from_json(read_json_file(path)); }

RunResult run_replicate(const ExperimentConfig& config, std::size_t replicate,
                        const RunHooks& hooks) {
  LoopConfig loop = config.loop;
  loop.rng_seed = config.base_seed + replicate;
  RunHooks h = hooks;
  h.cadence = config.snapshot_cadence;
  const InflowAxis axis = config.inflow;
  return run_map_elites(config.encodings, loop, config.archive,
                        [axis](const HeightGrid& g) { return fitness(g, axis); }, h);
}

Manifest run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
  validate(config);
  const fs::path root(config.output_dir);
  ensure_dir(root);

  Manifest manifest;
  manifest.config = config;
  manifest.config_hash = config_hash(config);
  for (std::size_t r = 0; r < config.replicates; ++r) {
    const std::string dir = replicate_dir(r);
    manifest.replicates.push_back(
        {r, config.base_seed + r, dir + "/metrics.csv", dir + "/archive.json"});
    ensure_dir(root / dir);
  }

  std::mutex progress_mutex;
  parallel_for(config.replicates, config.workers, [&](std::size_t r) {
    const RunResult result = run_replicate(config, r);
    const auto& rec = manifest.replicates[r];

    const fs::path metrics_path = root / rec.metrics_file;
    auto metrics = open_out(metrics_path);
    write_metrics_header(metrics);
    for (const auto& row : result.metrics) write_metrics_row(metrics, row);
    close_checked(metrics, metrics_path);

    const fs::path archive_path = root / rec.archive_file;
    auto archive = open_out(archive_path);
    archive << archive_to_json(result.archive).dump() << '\n';
    close_checked(archive, archive_path);

    if (progress) {
      const auto& last = result.metrics.back();
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s replicate %zu (seed %llu): coverage %.3f, qd %.3f",
                    config.label.c_str(), r, static_cast<unsigned long long>(rec.seed),
                    last.coverage, last.qd_score);
      std::lock_guard lock(progress_mutex);
      progress(buf);
    }
  });

  manifest.created_at = utc_timestamp();
  const fs::path manifest_path = root / "manifest.json";
  auto out = open_out(manifest_path);
  out << manifest_to_json(manifest).dump(2) << '\n';
  close_checked(out, manifest_path);
  return manifest;
}

// ---------------------------------------------------------------------------

std::string_view to_string(SummaryMetric m) {
  switch (m) {
    case SummaryMetric::MeanFitness:
      return "mean_fitness";
    case SummaryMetric::Coverage:
      return "coverage";
    case SummaryMetric::QdScore:
      return "qd_score";
    case SummaryMetric::PhenotypicDiversity:
      return "phenotypic_diversity";
  }
  return "";
}

double value_of(const RunMetrics& m, SummaryMetric which) {
  switch (which) {
    case SummaryMetric::MeanFitness:
      return m.mean_fitness;
    case SummaryMetric::Coverage:
      return m.coverage;
    case SummaryMetric::QdScore:
      return m.qd_score;
    case SummaryMetric::PhenotypicDiversity:
      return m.phenotypic_diversity;
  }
  return 0.0;
}

namespace {

std::vector<double> column(const std::vector<RunMetrics>& rows, SummaryMetric which) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(value_of(r, which));
  return out;
}

}  // namespace

ConfigurationSummary summarize(std::string label, std::vector<RunMetrics> finals) {
  ConfigurationSummary s;
  s.label = std::move(label);
  s.finals = std::move(finals);
  for (std::size_t k = 0; k < kSummaryMetrics.size(); ++k) {
    const auto xs = column(s.finals, kSummaryMetrics[k]);
    s.mean[k] = mean(xs);
    s.stddev[k] = sample_stddev(xs);
  }
  for (const auto& f : s.finals) {
    for (std::size_t e = 0; e < kEncodingCount; ++e) s.mean_proportions[e] += f.proportions[e];
  }
  if (!s.finals.empty()) {
    for (auto& p : s.mean_proportions) p /= static_cast<double>(s.finals.size());
  }
  return s;
}

Summary aggregate(std::vector<ConfigurationSummary> configurations) {
  Summary out;
  out.configurations = std::move(configurations);
  const std::size_t n = out.configurations.size();
  for (std::size_t k = 0; k < kSummaryMetrics.size(); ++k) {
    auto& matrix = out.p_values[k];
    matrix.assign(n, std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = column(out.configurations[i].finals, kSummaryMetrics[k]);
      for (std::size_t j = 0; j < n; ++j) {
        const auto b = column(out.configurations[j].finals, kSummaryMetrics[k]);
        if (a.size() >= 2 && b.size() >= 2) matrix[i][j] = welch_t_test(a, b).p_value;
      }
    }
  }
  return out;
}

Summary aggregate(std::span<const fs::path> manifests) {
  std::vector<ConfigurationSummary> configs;
  for (const auto& path : manifests) {
    const Manifest m = load_manifest(path);
    std::vector<RunMetrics> finals;
    for (const auto& rep : m.replicates) {
      const fs::path metrics_path = path.parent_path() / rep.metrics_file;
      std::ifstream in(metrics_path);
      if (!in) throw IoError("missing metrics file " + metrics_path.string());
      const auto rows = read_metrics_csv(in, metrics_path.string());
      if (rows.empty()) throw ParseError(metrics_path.string(), "no metric rows");
      finals.push_back(rows.back());
    }
    configs.push_back(summarize(m.config.label, std::move(finals)));
  }
  return aggregate(std::move(configs));
}

void write_summary(const Summary& summary, const fs::path& dir) {
  ensure_dir(dir);
  char buf[64];
  auto num = [&](double v) -> std::string {
    if (std::isnan(v)) return "nan";
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  };

  {
    const fs::path path = dir / "summary.csv";
    auto out = open_out(path);
    out << "configuration,replicates";
    for (auto m : kSummaryMetrics) out << ',' << to_string(m) << "_mean," << to_string(m) << "_std";
    out << '\n';
    for (const auto& c : summary.configurations) {
      out << c.label << ',' << c.finals.size();
      for (std::size_t k = 0; k < kSummaryMetrics.size(); ++k) {
        out << ',' << num(c.mean[k]) << ',' << num(c.stddev[k]);
      }
      out << '\n';
    }
    close_checked(out, path);
  }
  {
    const fs::path path = dir / "proportions.csv";
    auto out = open_out(path);
    out << "configuration,replicate";
    for (auto tag : kAllEncodings) out << ",prop_" << to_string(tag);
    out << '\n';
    for (const auto& c : summary.configurations) {
      for (std::size_t r = 0; r < c.finals.size(); ++r) {
        out << c.label << ',' << r;
        for (double p : c.finals[r].proportions) out << ',' << num(p);
        out << '\n';
      }
    }
    close_checked(out, path);
  }
  for (std::size_t k = 0; k < kSummaryMetrics.size(); ++k) {
    const fs::path path = dir / ("pvalues_" + std::string(to_string(kSummaryMetrics[k])) + ".csv");
    auto out = open_out(path);
    out << "configuration";
    for (const auto& c : summary.configurations) out << ',' << c.label;
    out << '\n';
    for (std::size_t i = 0; i < summary.configurations.size(); ++i) {
      out << summary.configurations[i].label;
      for (double p : summary.p_values[k][i]) out << ',' << num(p);
      out << '\n';
    }
    close_checked(out, path);
  }
}

}  // namespace massqd
