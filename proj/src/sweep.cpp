#include <cstdio>
#include <fstream>

#include "massqd/error.hpp"
#include "massqd/experiment.hpp"

namespace massqd {

using nlohmann::json;
namespace fs = std::filesystem;

SweepSpec sweep_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "base" && key != "grid" && key != "select") throw ConfigError(key, "unknown key");
  }
  if (!doc.contains("base")) throw ConfigError("base", "missing");

  SweepSpec spec;
  try {
    spec.base = config_from_json(doc["base"]);
  } catch (const ConfigError& e) {
    throw ConfigError("base." + e.field(), e.detail());
  }
  if (spec.base.encodings.size() != 1) {
    throw ConfigError("base.encodings", "a sweep varies exactly one encoding");
  }

  if (!doc.contains("grid") || !doc["grid"].is_object() || doc["grid"].empty()) {
    throw ConfigError("grid", "expected a non-empty object of value lists");
  }
  for (const auto& [key, values] : doc["grid"].items()) {
    if (key == "type") throw ConfigError("grid.type", "the encoding type cannot be swept");
    if (!values.is_array() || values.empty()) {
      throw ConfigError("grid." + key, "expected a non-empty array");
    }
    spec.grid.emplace_back(key, std::vector<json>(values.begin(), values.end()));
  }
  if (doc.contains("select")) {
    if (!doc["select"].is_number_integer() || doc["select"].get<long long>() < 1) {
      throw ConfigError("select", "must be a positive integer");
    }
    spec.select = doc["select"].get<std::size_t>();
  }
  // Validates every grid value against the encoding schema up front.
  expand_sweep(spec);
  return spec;
}

std::vector<ExperimentConfig> expand_sweep(const SweepSpec& spec) {
  std::size_t total = 1;
  for (const auto& axis : spec.grid) total *= axis.second.size();

  std::vector<ExperimentConfig> out;
  out.reserve(total);
  for (std::size_t point = 0; point < total; ++point) {
    json doc = config_to_json(spec.base);
    json& enc = doc["encodings"][0];
    std::string label = spec.base.label + "[";
    std::size_t rest = point;
    for (std::size_t a = spec.grid.size(); a-- > 0;) {
      const auto& [key, values] = spec.grid[a];
      enc[key] = values[rest % values.size()];
      rest /= values.size();
    }
    for (std::size_t a = 0; a < spec.grid.size(); ++a) {
      if (a) label += ' ';
      label += spec.grid[a].first + "=" + enc[spec.grid[a].first].dump();
    }
    doc["label"] = label + "]";
    char dir[32];
    std::snprintf(dir, sizeof dir, "point_%03zu", point);
    doc["output_dir"] = (fs::path(spec.base.output_dir) / dir).string();
    try {
      out.push_back(config_from_json(doc));
    } catch (const ConfigError& e) {
      throw ConfigError("grid (point " + std::to_string(point) + "): " + e.field(), e.detail());
    }
  }
  return out;
}

SweepReport rank_sweep(std::vector<SweepPoint> points, std::size_t select) {
  std::vector<ObjectivePoint> objectives;
  objectives.reserve(points.size());
  for (const auto& p : points) objectives.push_back(p.objectives);

  const auto fronts = pareto_fronts(objectives);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    for (std::size_t i : fronts[f]) points[i].front = f + 1;
  }
  SweepReport report;
  report.selected = select_best(objectives, fronts, select);
  for (std::size_t i : report.selected) points[i].selected = true;
  report.points = std::move(points);
  return report;
}

SweepReport run_sweep(const SweepSpec& spec, const fs::path& output_dir,
                      const ProgressFn& progress) {
  SweepSpec local = spec;
  local.base.output_dir = output_dir.string();
  const auto configs = expand_sweep(local);

  std::vector<SweepPoint> points;
  for (const auto& config : configs) {
    run_experiment(config, progress);
    const std::vector<fs::path> manifest = {fs::path(config.output_dir) / "manifest.json"};
    const Summary s = aggregate(manifest);
    const auto& c = s.configurations.front();

    SweepPoint p;
    const json enc = encoding_to_json(config.encodings.front());
    p.parameters = json::object();
    for (const auto& axis : spec.grid) p.parameters[axis.first] = enc.at(axis.first);
    p.objectives = {c.mean[0], c.mean[3]};
    points.push_back(std::move(p));
  }

  SweepReport report = rank_sweep(std::move(points), spec.select);

  json doc = json::array();
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& p = report.points[i];
    doc.push_back({{"index", i},
                   {"label", configs[i].label},
                   {"output_dir", configs[i].output_dir},
                   {"parameters", p.parameters},
                   {"mean_fitness", p.objectives.fitness},
                   {"mean_phenotypic_diversity", p.objectives.diversity},
                   {"front", p.front},
                   {"selected", p.selected}});
  }
  {
    const fs::path path = output_dir / "sweep_report.json";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << json{{"points", doc}, {"selected", report.selected}}.dump(2) << '\n';
  }
  {
    const fs::path path = output_dir / "sweep_report.csv";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "index";
    for (const auto& axis : spec.grid) out << ',' << axis.first;
    out << ",mean_fitness,mean_phenotypic_diversity,front,selected\n";
    char buf[64];
    for (std::size_t i = 0; i < report.points.size(); ++i) {
      const auto& p = report.points[i];
      out << i;
      for (const auto& axis : spec.grid) {
        const std::string v = p.parameters[axis.first].dump();
        out << ',' << (v.find(',') == std::string::npos ? v : "\"" + v + "\"");
      }
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", p.objectives.fitness, p.objectives.diversity);
      out << buf << ',' << p.front << ',' << (p.selected ? 1 : 0) << '\n';
    }
  }
  return report;
}

}  // namespace massqd
