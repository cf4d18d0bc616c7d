// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "massqd/archive.hpp"
#include "massqd/cli.hpp"
#include "massqd/config.hpp"
#include "massqd/experiment.hpp"
#include "massqd/map_elites.hpp"
#include "massqd/metrics.hpp"
#include "massqd/pareto.hpp"
#include "massqd/stats.hpp"

using namespace massqd;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances and budgets.
constexpr int kOracleSeeds = 5;
constexpr int kOracleSeedsRequired = 4;
constexpr std::size_t kOracleGenerations = 2000;
constexpr double kOracleSeconds = 10.0;
constexpr double kMetricRelTol = 1e-9;
constexpr int kMetricArchives = 1000;
constexpr int kEquivalenceGrids = 1000;
constexpr std::size_t kDeskGenerations = 5000;
constexpr std::size_t kDeskSeeds = 10;
constexpr double kDiversityFactor = 10.0;
constexpr double kAlpha = 0.05;
constexpr double kWelchTolerance = 0.001;
// Welch statistic and p-value of the two-sample example below, computed
// independently with scipy.stats.ttest_ind(equal_var=False).
constexpr double kWelchReferenceT = -2.455356398286006;
constexpr double kWelchReferenceP = 0.021378001462867;
constexpr double kWelchPTolerance = 1e-9;
constexpr int kPropertyCases = 10000;
constexpr double kPropertySeconds = 120.0;

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("criterion %d: %s  %s (%s)\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

HeightGrid random_grid(GridShape shape, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> level(0, kMaxLevel);
  HeightGrid g(shape);
  for (int r = 0; r < shape.rows; ++r)
    for (int c = 0; c < shape.cols; ++c) g.set(r, c, level(rng));
  return g;
}

// ---------------------------------------------------------------------------

void brute_force_oracle() {
  const auto t0 = Clock::now();
  const GridShape shape{2, 2};
  const ArchiveSpec spec{{5, -1.0, 4.0}, {3, -1.0, 2.0}};
  Archive reference(spec);
  std::map<std::size_t, double> optimum;
  for (int i = 0; i < 256; ++i) {
    std::vector<int> levels = {i & 3, (i >> 2) & 3, (i >> 4) & 3, (i >> 6) & 3};
    const HeightGrid g = HeightGrid::from_levels(shape, levels);
    const BinCoord b = reference.bin_of(features(g));
    const auto slot = static_cast<std::size_t>(b.area * spec.count.bins + b.count);
    const double f = fitness(g);
    auto it = optimum.find(slot);
    if (it == optimum.end() || f > it->second) optimum[slot] = f;
  }

  EncodingConfig enc;
  enc.shape = shape;
  enc.p_mut = 0.25;
  const std::vector<EncodingConfig> encs = {enc};
  int exact = 0;
  for (int seed = 1; seed <= kOracleSeeds; ++seed) {
    const LoopConfig loop{100, 10, kOracleGenerations, static_cast<std::uint64_t>(seed)};
    const RunResult r = run_map_elites(encs, loop, spec, [](const HeightGrid& g) { return fitness(g); });
    bool ok = r.archive.filled() == optimum.size();
    for (const auto& [slot, best] : optimum) {
      const auto& e = r.archive.at(r.archive.coord_of_slot(slot));
      ok = ok && e && e->fitness == best;
    }
    exact += ok;
  }
  const double secs = seconds_since(t0);
  report(1, exact >= kOracleSeedsRequired && secs < kOracleSeconds,
         "2x2 brute-force archive oracle",
         std::to_string(exact) + "/" + std::to_string(kOracleSeeds) + " seeds exact over " +
             std::to_string(optimum.size()) + " feasible bins, " + fmt("%.2f s", secs));
}

// ---------------------------------------------------------------------------

bool close(double got, double want) {
  return std::abs(got - want) <= kMetricRelTol * std::max(1.0, std::abs(want));
}

void metric_oracles() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 10), level(0, 3), sparse(0, 4);
  int mismatches = 0;
  for (int t = 0; t < kMetricArchives; ++t) {
    Archive a;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) {
      HeightGrid g;
      for (int r = 0; r < g.rows(); ++r)
        for (int c = 0; c < g.cols(); ++c) g.set(r, c, sparse(rng) == 0 ? level(rng) : 0);
      Elite e;
      e.phenotype = g;
      e.features = features(g);
      e.fitness = fitness(g);
      a.try_replace(std::move(e));
    }
    const auto es = a.elites();
    double qd = 0.0, div = 0.0;
    for (std::size_t i = 0; i < es.size(); ++i) {
      qd += es[i]->fitness;
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        double s = 0.0;
        for (int k = 0; k < es[i]->phenotype.size(); ++k)
          s += std::pow(std::abs(int{es[i]->phenotype.cells()[k]} - int{es[j]->phenotype.cells()[k]}), 0.1);
        div += std::pow(s, 10.0);
      }
    }
    const double cov = static_cast<double>(es.size()) / 256.0;
    if (!close(coverage(a), cov) || !close(qd_score(a), qd) || !close(phenotypic_diversity(a), div)) {
      ++mismatches;
    }
  }
  const std::vector<double> z = {0, 0, 0}, e1 = {1, 0, 0}, e12 = {1, 1, 0};
  const bool worked = l01_distance(z, z) == 0.0 && l01_distance(z, e1) == 1.0 &&
                      l01_distance(z, e12) == 1024.0;
  report(2, mismatches == 0 && worked, "metric oracles",
         std::to_string(kMetricArchives - mismatches) + "/" + std::to_string(kMetricArchives) +
             " archives within 1e-9, l01 worked values " + (worked ? "exact" : "wrong"));
}

// ---------------------------------------------------------------------------

void representational_equivalence() {
  std::mt19937_64 rng(77);
  const DictionaryCodec codec(GridShape{}, 2, 2);
  int exact = 0;
  for (int i = 0; i < kEquivalenceGrids; ++i) {
    const HeightGrid g = random_grid({}, rng);
    exact += codec.decode(codec.lookup(g)) == g;
  }
  report(3, exact == kEquivalenceGrids, "dictionary lookup reproduces direct grids",
         std::to_string(exact) + "/" + std::to_string(kEquivalenceGrids) + " exact");
}

// ---------------------------------------------------------------------------

ExperimentConfig desk_config(const std::vector<EncodingTag>& tags) {
  nlohmann::json encs = nlohmann::json::array();
  for (auto t : tags) encs.push_back({{"type", std::string(to_string(t))}});
  nlohmann::json doc = {{"encodings", encs},
                        {"loop", {{"max_generations", kDeskGenerations}}},
                        {"replicates", kDeskSeeds}};
  return config_from_json(doc);
}

struct DeskResult {
  std::vector<RunMetrics> finals;
  double seconds = 0.0;
};

std::vector<double> column(const DeskResult& r, double RunMetrics::*field) {
  std::vector<double> xs;
  for (const auto& m : r.finals) xs.push_back(m.*field);
  return xs;
}

DeskResult run_desk(const ExperimentConfig& config, const RunHooks& hooks = {}) {
  DeskResult out;
  const auto t0 = Clock::now();
  for (std::size_t r = 0; r < config.replicates; ++r) {
    out.finals.push_back(run_replicate(config, r, hooks).metrics.back());
  }
  out.seconds = seconds_since(t0);
  return out;
}

void desk_orderings(std::map<EncodingTag, DeskResult>& single) {
  for (auto tag : kAllEncodings) {
    single[tag] = run_desk(desk_config({tag}));
    std::printf("  %-10s fitness %.4f  coverage %.4f  qd %.2f  diversity %.3e  (%.1f s)\n",
                std::string(to_string(tag)).c_str(),
                median(column(single[tag], &RunMetrics::mean_fitness)),
                median(column(single[tag], &RunMetrics::coverage)),
                median(column(single[tag], &RunMetrics::qd_score)),
                median(column(single[tag], &RunMetrics::phenotypic_diversity)), single[tag].seconds);
  }
  const DeskResult& ca = single[EncodingTag::Ca];

  // (a) CA has the lowest mean archive fitness.
  bool a_ok = true;
  std::string a_detail;
  const auto ca_fit = column(ca, &RunMetrics::mean_fitness);
  for (auto tag : kAllEncodings) {
    if (tag == EncodingTag::Ca) continue;
    const auto other = column(single[tag], &RunMetrics::mean_fitness);
    const auto t = welch_t_test(ca_fit, other, kAlpha);
    const bool ok = median(ca_fit) < median(other) && t.t_statistic < 0 && t.significant;
    a_ok = a_ok && ok;
    a_detail += std::string(a_detail.empty() ? "" : ", ") + std::string(to_string(tag)) +
                (ok ? " ok" : " violated") + fmt(" p=%.2g", t.p_value);
  }

  // (b) CA diversity at least 10x direct, dictionary and parametric.
  bool b_ok = true;
  std::string b_detail;
  const auto ca_div = column(ca, &RunMetrics::phenotypic_diversity);
  for (auto tag : {EncodingTag::Direct, EncodingTag::Dictionary, EncodingTag::Parametric}) {
    const auto other = column(single[tag], &RunMetrics::phenotypic_diversity);
    const auto t = welch_t_test(ca_div, other, kAlpha);
    const double ratio = median(ca_div) / median(other);
    const bool ok = ratio >= kDiversityFactor && t.t_statistic > 0 && t.significant;
    b_ok = b_ok && ok;
    b_detail += std::string(b_detail.empty() ? "" : ", ") + std::string(to_string(tag)) +
                fmt(" x%.1f", ratio) + fmt(" p=%.2g", t.p_value);
  }

  // (c) CA coverage at least direct coverage.
  const auto ca_cov = column(ca, &RunMetrics::coverage);
  const auto direct_cov = column(single[EncodingTag::Direct], &RunMetrics::coverage);
  const auto tc = welch_t_test(ca_cov, direct_cov, kAlpha);
  const bool c_ok = median(ca_cov) >= median(direct_cov) && tc.t_statistic > 0 && tc.significant;

  std::printf("  4(a) %s: CA mean fitness lowest [%s]\n", a_ok ? "PASS" : "FAIL", a_detail.c_str());
  std::printf("  4(b) %s: CA diversity >= 10x [%s]\n", b_ok ? "PASS" : "FAIL", b_detail.c_str());
  std::printf("  4(c) %s: CA coverage >= direct [%.4f vs %.4f, p=%.2g]\n", c_ok ? "PASS" : "FAIL",
              median(ca_cov), median(direct_cov), tc.p_value);
  double secs = 0.0;
  for (const auto& [tag, r] : single) secs += r.seconds;
  report(4, a_ok && b_ok && c_ok, "desk-scale encoding orderings",
         std::string("a ") + (a_ok ? "pass" : "fail") + ", b " + (b_ok ? "pass" : "fail") + ", c " +
             (c_ok ? "pass" : "fail") + fmt(", %.0f s", secs));
}

// ---------------------------------------------------------------------------

void multi_encoding(std::map<EncodingTag, DeskResult>& single) {
  const ExperimentConfig config =
      desk_config({kAllEncodings.begin(), kAllEncodings.end()});
  bool extinction_final = true;
  std::array<bool, kEncodingCount> extinct{};
  std::size_t logged = 0;
  RunHooks hooks;
  hooks.on_metrics = [&](const RunMetrics& m) {
    if (m.generation == 0) extinct.fill(false);
    for (std::size_t e = 0; e < kEncodingCount; ++e) {
      if (extinct[e] && m.proportions[e] != 0.0) extinction_final = false;
      if (m.proportions[e] == 0.0) extinct[e] = true;
    }
    ++logged;
  };
  // Every generation as well, not only the logged rows.
  std::array<bool, kEncodingCount> extinct_each{};
  hooks.on_generation = [&](std::size_t gen, const Archive& a) {
    if (gen == 0) extinct_each.fill(false);
    const auto p = encoding_proportions(a);
    for (std::size_t e = 0; e < kEncodingCount; ++e) {
      if (extinct_each[e] && p[e] != 0.0) extinction_final = false;
      if (p[e] == 0.0) extinct_each[e] = true;
    }
  };
  const DeskResult multi = run_desk(config, hooks);

  std::vector<double> medians;
  for (const auto& [tag, r] : single) medians.push_back(median(column(r, &RunMetrics::qd_score)));
  const double lo = *std::min_element(medians.begin(), medians.end());
  const double hi = *std::max_element(medians.begin(), medians.end());
  const double m = median(column(multi, &RunMetrics::qd_score));
  const bool within = m >= lo && m <= hi;
  report(5, within && extinction_final, "multi-encoding QD-score and irreversible extinction",
         fmt("median %.2f", m) + fmt(" in [%.2f", lo) + fmt(", %.2f]", hi) + ", " +
             std::to_string(logged) + " logged rows, extinction " +
             (extinction_final ? "irreversible" : "reversed") + fmt(", %.0f s", multi.seconds));
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  const fs::path dir = fs::temp_directory_path() / "massqd_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "config.json");
    cfg << R"({"encodings": [{"type": "direct"}, {"type": "dictionary"}, {"type": "parametric"},
                             {"type": "cppn"}, {"type": "ca"}],
               "loop": {"max_generations": 500}, "replicates": 3, "snapshot_cadence": 50})";
  }
  std::ostringstream err;
  auto run = [&](const std::string& out, const std::string& workers) {
    const std::string cfg = (dir / "config.json").string();
    const std::string target = (dir / out).string();
    const char* argv[] = {"massqd", "run", "--config", cfg.c_str(), "--seed", "42", "--out",
                          target.c_str(), "--override", workers.c_str(), "--quiet"};
    return run_cli(11, argv, err);
  };
  bool ok = run("a", "workers=1") == kExitOk && run("b", "workers=1") == kExitOk &&
            run("c", "workers=3") == kExitOk;
  int files = 0;
  for (int r = 0; ok && r < 3; ++r) {
    char rep[32];
    std::snprintf(rep, sizeof rep, "replicate_%03d", r);
    for (const char* f : {"metrics.csv", "archive.json"}) {
      const std::string a = slurp(dir / "a" / rep / f);
      ok = ok && !a.empty() && a == slurp(dir / "b" / rep / f) && a == slurp(dir / "c" / rep / f);
      ++files;
    }
  }
  fs::remove_all(dir);
  report(6, ok, "repeated runs are byte-identical",
         std::to_string(files) + " files compared across 3 runs" + (err.str().empty() ? "" : ": " + err.str()));
}

// ---------------------------------------------------------------------------

void statistics() {
  const std::vector<double> a = {27.5, 21.0, 19.0, 23.6, 17.0, 17.9, 16.9, 20.1,
                                 21.9, 22.6, 23.1, 19.6, 19.0, 21.7, 21.4};
  const std::vector<double> b = {27.1, 22.0, 20.8, 23.4, 23.4, 23.5, 25.8, 22.0,
                                 24.8, 20.2, 21.9, 22.1, 22.9, 20.5, 24.4};
  const TTestResult r = welch_t_test(a, b);
  const double dt = std::abs(r.t_statistic - kWelchReferenceT);
  const TTestResult same = welch_t_test(a, a);
  const bool ok = dt <= kWelchTolerance && std::abs(r.p_value - kWelchReferenceP) <= kWelchPTolerance &&
                  same.p_value == 1.0 && !same.significant;
  report(7, ok, "Welch t-test",
         fmt("t=%.6f", r.t_statistic) + fmt(" |dt|=%.1e", dt) + fmt(" p=%.6f", r.p_value) +
             fmt(", identical samples p=%.17g", same.p_value));
}

// ---------------------------------------------------------------------------

struct Property {
  std::string name;
  int cases = 0;
  int violations = 0;
};

void properties() {
  const auto t0 = Clock::now();
  std::vector<Property> props;
  Rng rng(8);

  {
    Property totality{"decoder totality"}, invariants{"mutation invariant preservation"};
    for (EncodingTag tag : kAllEncodings) {
      EncodingConfig c;
      c.tag = tag;
      c.p_mut = 0.3;
      const auto enc = make_encoding(c);
      Genome g = enc->random(rng);
      for (int i = 0; i < kPropertyCases; ++i) {
        if (i % 25 == 0) g = enc->random(rng);
        try {
          const HeightGrid h = enc->decode(g);
          bool ok = h.shape() == c.shape;
          for (auto v : h.cells()) ok = ok && v <= kMaxLevel;
          totality.violations += !ok;
        } catch (...) {
          ++totality.violations;
        }
        ++totality.cases;
        g = enc->mutate(g, rng);
        invariants.violations += !enc->valid(g);
        ++invariants.cases;
      }
    }
    props.push_back(totality);
    props.push_back(invariants);
  }

  {
    Property bin{"per-bin fitness monotonicity"}, cov{"coverage monotonicity"};
    std::vector<EncodingConfig> encs(kEncodingCount);
    for (std::size_t i = 0; i < kEncodingCount; ++i) encs[i].tag = kAllEncodings[i];
    std::vector<double> best(256, -1.0);
    std::size_t filled = 0;
    RunHooks hooks;
    hooks.cadence = kPropertyCases;
    hooks.on_generation = [&](std::size_t, const Archive& a) {
      bool ok = true;
      for (std::size_t i = 0; i < a.filled(); ++i) {
        const std::size_t s = a.filled_bin(i);
        ok = ok && a.filled_elite(i).fitness >= best[s];
        best[s] = a.filled_elite(i).fitness;
      }
      bin.violations += !ok;
      ++bin.cases;
      cov.violations += a.filled() < filled;
      filled = a.filled();
      ++cov.cases;
    };
    const LoopConfig loop{100, 10, static_cast<std::size_t>(kPropertyCases), 5};
    run_map_elites(encs, loop, {}, [](const HeightGrid& g) { return fitness(g); }, hooks);
    props.push_back(bin);
    props.push_back(cov);
  }

  {
    Property pareto{"Pareto-front dominance"};
    std::uniform_int_distribution<int> coord(0, 9), count(1, 16);
    for (int t = 0; t < kPropertyCases; ++t) {
      std::vector<ObjectivePoint> pts(static_cast<std::size_t>(count(rng)));
      for (auto& p : pts) p = {coord(rng) / 10.0, static_cast<double>(coord(rng))};
      const auto fronts = pareto_fronts(pts);
      std::vector<int> rank(pts.size(), -1);
      bool ok = true;
      for (std::size_t f = 0; f < fronts.size(); ++f)
        for (auto i : fronts[f]) {
          ok = ok && rank[i] == -1;
          rank[i] = static_cast<int>(f);
        }
      for (std::size_t i = 0; i < pts.size(); ++i) {
        ok = ok && rank[i] >= 0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
          if (dominates(pts[i], pts[j])) ok = ok && rank[i] < rank[j];
        }
        if (ok && rank[i] > 0) {
          bool covered = false;
          for (auto j : fronts[static_cast<std::size_t>(rank[i] - 1)]) covered |= dominates(pts[j], pts[i]);
          ok = ok && covered;
        }
      }
      pareto.violations += !ok;
      ++pareto.cases;
    }
    props.push_back(pareto);
  }

  const double secs = seconds_since(t0);
  bool ok = secs < kPropertySeconds;
  std::string detail;
  for (const auto& p : props) {
    ok = ok && p.violations == 0 && p.cases >= kPropertyCases;
    detail += p.name + " " + std::to_string(p.cases - p.violations) + "/" + std::to_string(p.cases) + "; ";
  }
  report(8, ok, "randomized property suites", detail + fmt("%.1f s", secs));
}

}  // namespace

int main() {
  brute_force_oracle();
  metric_oracles();
  representational_equivalence();
  std::map<EncodingTag, DeskResult> single;
  desk_orderings(single);
  multi_encoding(single);
  determinism();
  statistics();
  properties();
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
