#include "massqd/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "massqd/error.hpp"
#include "massqd/experiment.hpp"
#include "massqd/render.hpp"

namespace massqd {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string config;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicates;
  std::string out;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, const char* config_flag = "--config") {
  cmd->add_option(config_flag, o.config, "configuration file")->required();
  cmd->add_option("--override", o.overrides, "dot.path=value patch applied before validation");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--replicates", o.replicates, "number of replicates");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_flag("--quiet", o.quiet, "suppress progress reporting");
}

json load_patched(const CommonOptions& o, const std::string& prefix) {
  json doc = read_json_file(o.config);
  for (const auto& patch : o.overrides) apply_override(doc, patch);
  if (o.seed) apply_override(doc, prefix + "base_seed=" + std::to_string(*o.seed));
  if (o.replicates) apply_override(doc, prefix + "replicates=" + std::to_string(*o.replicates));
  if (!o.out.empty()) (prefix.empty() ? doc : doc["base"])["output_dir"] = o.out;
  return doc;
}

json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": byte " + std::to_string(e.byte), "invalid JSON");
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& err) {
  CLI::App app{"Quality-diversity search over building massing encodings"};
  app.name("massqd");
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "run every replicate of an experiment");
  add_common(run, run_opts);

  CommonOptions validate_opts;
  auto* validate_cmd = app.add_subcommand("validate-config", "parse and check a configuration");
  add_common(validate_cmd, validate_opts);

  CommonOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "grid-search hyperparameters of one encoding");
  add_common(sweep, sweep_opts, "--spec");

  std::vector<std::string> manifests;
  std::string aggregate_out;
  auto* aggregate_cmd = app.add_subcommand("aggregate", "summary and p-value tables over runs");
  aggregate_cmd->add_option("--manifest", manifests, "manifest.json of an experiment")->required();
  aggregate_cmd->add_option("--out", aggregate_out, "output directory")->required();

  std::string archive_path, render_out, coloring = "fitness";
  auto* render_archive_cmd = app.add_subcommand("render-archive", "SVG of an archive snapshot");
  render_archive_cmd->add_option("--archive", archive_path, "archive.json")->required();
  render_archive_cmd->add_option("--out", render_out, "SVG file")->required();
  render_archive_cmd->add_option("--color", coloring, "fitness or encoding")
      ->check(CLI::IsMember({"fitness", "encoding"}));

  std::string phenotype_path, phenotype_archive, bin_text, phenotype_out;
  auto* render_phenotype_cmd = app.add_subcommand("render-phenotype", "SVG of one height grid");
  auto* ph_opt = render_phenotype_cmd->add_option("--phenotype", phenotype_path,
                                                  "JSON nested rows x cols array");
  auto* ar_opt = render_phenotype_cmd->add_option("--archive", phenotype_archive, "archive.json");
  render_phenotype_cmd->add_option("--bin", bin_text, "area,count bin of the elite")->needs(ar_opt);
  render_phenotype_cmd->add_option("--out", phenotype_out, "SVG file")->required();
  ph_opt->excludes(ar_opt);

  std::vector<std::string> export_archives;
  std::string export_csv, export_json;
  auto* export_cmd = app.add_subcommand("export-phenotypes", "dump archive phenotypes");
  export_cmd->add_option("--archive", export_archives, "archive.json")->required();
  export_cmd->add_option("--out", export_csv, "CSV file")->required();
  export_cmd->add_option("--json", export_json, "optional JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      err << app.help();
      return kExitOk;
    }
    err << "massqd: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*validate_cmd) {
      const auto config = config_from_json(load_patched(validate_opts, ""));
      if (!validate_opts.quiet) {
        err << "ok: " << config.label << ", " << config.replicates << " replicate(s), hash "
            << config_hash(config) << '\n';
      }
    } else if (*run) {
      const auto config = config_from_json(load_patched(run_opts, ""));
      ProgressFn progress;
      if (!run_opts.quiet) progress = [&err](const std::string& line) { err << line << '\n'; };
      const auto manifest = run_experiment(config, progress);
      if (!run_opts.quiet) {
        err << "wrote " << manifest.replicates.size() << " replicate(s) to " << config.output_dir
            << '\n';
      }
    } else if (*sweep) {
      const auto spec = sweep_from_json(load_patched(sweep_opts, "base."));
      ProgressFn progress;
      if (!sweep_opts.quiet) progress = [&err](const std::string& line) { err << line << '\n'; };
      const auto report = run_sweep(spec, spec.base.output_dir, progress);
      if (!sweep_opts.quiet) {
        err << "swept " << report.points.size() << " configuration(s), selected";
        for (auto i : report.selected) err << ' ' << i;
        err << '\n';
      }
    } else if (*aggregate_cmd) {
      std::vector<fs::path> paths(manifests.begin(), manifests.end());
      for (const auto& p : paths) {
        if (!fs::exists(p)) throw IoError("missing manifest " + p.string());
      }
      write_summary(aggregate(paths), aggregate_out);
    } else if (*render_archive_cmd) {
      const auto doc = read_document(archive_path);
      write_text(render_out, render_archive(doc, coloring == "encoding" ? TileColoring::Encoding
                                                                        : TileColoring::Fitness));
    } else if (*render_phenotype_cmd) {
      HeightGrid grid;
      if (!phenotype_path.empty()) {
        try {
          grid = grid_from_json(read_document(phenotype_path));
        } catch (const std::invalid_argument& e) {
          throw ParseError(phenotype_path, e.what());
        }
      } else if (!phenotype_archive.empty()) {
        const Archive archive = archive_from_json(read_document(phenotype_archive));
        int area = 0, count = 0;
        if (std::sscanf(bin_text.c_str(), "%d,%d", &area, &count) != 2) {
          throw ConfigError("--bin", "expected area,count");
        }
        if (area < 0 || area >= archive.area_bins() || count < 0 || count >= archive.count_bins()) {
          throw ConfigError("--bin", "outside the archive");
        }
        const auto& elite = archive.at({area, count});
        if (!elite) throw ConfigError("--bin", "bin " + bin_text + " is empty");
        grid = elite->phenotype;
      } else {
        throw ConfigError("--phenotype", "either --phenotype or --archive is required");
      }
      write_text(phenotype_out, render_phenotype(grid));
    } else if (*export_cmd) {
      std::string csv;
      json all = json::array();
      bool header = false;
      for (const auto& path : export_archives) {
        const Archive archive = archive_from_json(read_document(path));
        for (const Elite* e : archive.elites()) {
          const auto cells = e->phenotype.cells();
          if (!header) {
            csv += "archive,encoding,fitness";
            for (std::size_t i = 0; i < cells.size(); ++i) csv += ",cell_" + std::to_string(i);
            csv += '\n';
            header = true;
          }
          csv += path + ',' + std::string(to_string(e->tag)) + ',' + csv_number(e->fitness);
          for (auto c : cells) csv += ',' + std::to_string(int{c});
          csv += '\n';
          all.push_back({{"archive", path},
                         {"encoding", std::string(to_string(e->tag))},
                         {"fitness", e->fitness},
                         {"phenotype", to_json(e->phenotype)}});
        }
      }
      write_text(export_csv, csv);
      if (!export_json.empty()) write_text(export_json, all.dump() + "\n");
    }
  } catch (const ConfigError& e) {
    err << "massqd: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "massqd: parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "massqd: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "massqd: invalid input: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace massqd
