#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "massqd/cli.hpp"
#include "massqd/metrics.hpp"

using namespace massqd;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string err;
};

Invocation cli(std::vector<std::string> args) {
  args.insert(args.begin(), "massqd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), err);
  return {code, err.str()};
}

fs::path workdir() {
  fs::path p = fs::temp_directory_path() / "massqd_unit_cli";
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int lines_in(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

const char* kConfig = R"({
  "encodings": [{"type": "parametric", "rectangles": 3}, {"type": "ca", "steps": 3}],
  "loop": {"init_population": 8, "children_per_generation": 4, "max_generations": 20},
  "replicates": 1, "snapshot_cadence": 5
})";

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(cli({}).code == kExitConfig);
  CHECK(cli({"launch"}).code == kExitConfig);
  CHECK(cli({"run"}).code == kExitConfig);
  CHECK(cli({"render-archive", "--archive", "a.json", "--out", "x.svg", "--color", "red"}).code ==
        kExitConfig);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("validate-config") {
  fs::path dir = workdir();
  write(dir / "good.json", kConfig);
  write(dir / "bad.json", R"({"encodings": [{"type": "ca", "mask_size": 4}]})");
  write(dir / "broken.json", "{");
  CHECK(cli({"validate-config", "--config", (dir / "good.json").string()}).code == kExitOk);
  Invocation bad = cli({"validate-config", "--config", (dir / "bad.json").string()});
  CHECK(bad.code == kExitConfig);
  CHECK(bad.err.find("encodings[0].mask_size") != std::string::npos);
  CHECK(cli({"validate-config", "--config", (dir / "broken.json").string()}).code == kExitConfig);
  CHECK(cli({"validate-config", "--config", (dir / "missing.json").string()}).code == kExitIo);
  CHECK(cli({"validate-config", "--config", (dir / "good.json").string(), "--override",
             "encodings.1.steps=-1"})
            .code == kExitConfig);
  CHECK(cli({"validate-config", "--config", MASSQD_SOURCE_DIR "/configs/default.json"}).code ==
        kExitOk);
  fs::remove_all(dir);
}

TEST_CASE("run, render and export") {
  fs::path dir = workdir();
  write(dir / "c.json", kConfig);
  const std::string out = (dir / "run").string();
  Invocation r = cli({"run", "--config", (dir / "c.json").string(), "--out", out, "--override",
                      "loop.max_generations=0", "--quiet"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.err.empty());
  const fs::path metrics = fs::path(out) / "replicate_000" / "metrics.csv";
  CHECK(lines_in(metrics) == 2);
  {
    std::ifstream in(metrics);
    std::string header;
    std::getline(in, header);
    CHECK(header == kMetricsCsvHeader);
  }

  const std::string archive = (fs::path(out) / "replicate_000" / "archive.json").string();
  CHECK(cli({"render-archive", "--archive", archive, "--out", (dir / "a.svg").string()}).code ==
        kExitOk);
  CHECK(slurp(dir / "a.svg").find("<svg") == 0);
  CHECK(cli({"render-archive", "--archive", archive, "--out", (dir / "e.svg").string(), "--color",
             "encoding"})
            .code == kExitOk);
  CHECK(cli({"render-archive", "--archive", (dir / "nope.json").string(), "--out",
             (dir / "n.svg").string()})
            .code == kExitIo);
  write(dir / "junk.json", R"({"area": 1})");
  CHECK(cli({"render-archive", "--archive", (dir / "junk.json").string(), "--out",
             (dir / "j.svg").string()})
            .code == kExitConfig);

  CHECK(cli({"render-phenotype", "--archive", archive, "--bin", "99,0", "--out",
             (dir / "p.svg").string()})
            .code == kExitConfig);
  write(dir / "grid.json", "[[0,1,2],[3,2,1]]");
  CHECK(cli({"render-phenotype", "--phenotype", (dir / "grid.json").string(), "--out",
             (dir / "g.svg").string()})
            .code == kExitOk);
  write(dir / "badgrid.json", "[[0,1,7]]");
  CHECK(cli({"render-phenotype", "--phenotype", (dir / "badgrid.json").string(), "--out",
             (dir / "b.svg").string()})
            .code == kExitConfig);

  CHECK(cli({"export-phenotypes", "--archive", archive, "--out", (dir / "p.csv").string(), "--json",
             (dir / "p.json").string()})
            .code == kExitOk);
  const std::string csv = slurp(dir / "p.csv");
  CHECK(csv.rfind("archive,encoding,fitness,cell_0,", 0) == 0);
  CHECK(csv.find("cell_153\n") != std::string::npos);
  CHECK(nlohmann::json::parse(slurp(dir / "p.json")).is_array());

  const std::string manifest = (fs::path(out) / "manifest.json").string();
  CHECK(cli({"aggregate", "--manifest", manifest, "--out", (dir / "agg").string()}).code == kExitOk);
  CHECK(fs::exists(dir / "agg" / "summary.csv"));
  CHECK(cli({"aggregate", "--manifest", (dir / "none.json").string(), "--out",
             (dir / "agg2").string()})
            .code == kExitIo);
  fs::remove_all(dir);
}

TEST_CASE("repeated runs are byte identical") {
  fs::path dir = workdir();
  write(dir / "c.json", kConfig);
  for (const char* sub : {"a", "b"})
    REQUIRE(cli({"run", "--config", (dir / "c.json").string(), "--out", (dir / sub).string(),
                 "--seed", "17", "--quiet"})
                .code == kExitOk);
  for (const char* f : {"replicate_000/metrics.csv", "replicate_000/archive.json"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  CHECK(nlohmann::json::parse(slurp(dir / "a" / "manifest.json"))["seeds"][0] == 17);
  fs::remove_all(dir);
}

TEST_CASE("sweep writes a report") {
  fs::path dir = workdir();
  write(dir / "s.json", R"({
    "base": {"encodings": [{"type": "ca"}],
             "loop": {"init_population": 6, "children_per_generation": 3, "max_generations": 5},
             "replicates": 2},
    "grid": {"steps": [2, 4], "mask_size": [3, 5]},
    "select": 2
  })");
  Invocation r = cli({"sweep", "--spec", (dir / "s.json").string(), "--out", (dir / "sw").string(),
                      "--quiet"});
  REQUIRE(r.code == kExitOk);
  auto report = nlohmann::json::parse(slurp(dir / "sw" / "sweep_report.json"));
  CHECK(report["points"].size() == 4);
  CHECK(report["selected"].size() == 2);
  CHECK(fs::exists(dir / "sw" / "sweep_report.csv"));
  CHECK(fs::exists(dir / "sw" / "point_003" / "manifest.json"));
  fs::remove_all(dir);
}
