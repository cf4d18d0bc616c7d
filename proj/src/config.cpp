#include "massqd/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "massqd/error.hpp"

namespace massqd {

using nlohmann::json;

namespace {

// Typed access to one JSON object that remembers which keys were read, so
// leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = doc_.find(key);
    return it == doc_.end() ? nullptr : &*it;
  }

  template <typename T>
  void get(const std::string& key, T& out) {
    const json* v = find(key);
    if (!v) return;
    try {
      if constexpr (std::is_unsigned_v<T>) {
        if (v->is_number_integer() && v->get<long long>() < 0) {
          throw ConfigError(child(key), "must be non-negative");
        }
        if (!v->is_number_integer()) throw ConfigError(child(key), "expected an integer");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v->is_number_integer()) throw ConfigError(child(key), "expected an integer");
      }
      out = v->get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(child(key), std::string("wrong type (") + e.what() + ")");
    }
  }

  void finish(const std::set<std::string>& allowed_extra = {}) const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.count(key) && !allowed_extra.count(key)) {
        throw ConfigError(child(key), "unknown key");
      }
    }
  }

 private:
  const json& doc_;
  std::string path_;
  std::set<std::string> seen_;
};

AxisSpec axis_from(const json& doc, const std::string& path, AxisSpec axis) {
  ObjectReader r(doc, path);
  r.get("bins", axis.bins);
  r.get("lo", axis.lo);
  r.get("hi", axis.hi);
  r.finish();
  if (axis.bins < 1) throw ConfigError(path + ".bins", "must be >= 1");
  if (!(axis.lo < axis.hi)) throw ConfigError(path + ".hi", "must exceed lo");
  return axis;
}

json axis_to(const AxisSpec& a) { return {{"bins", a.bins}, {"lo", a.lo}, {"hi", a.hi}}; }

std::string default_label(const std::vector<EncodingConfig>& encodings) {
  std::string out;
  for (const auto& e : encodings) {
    if (!out.empty()) out += '+';
    out += to_string(e.tag);
  }
  return out;
}

}  // namespace

EncodingConfig encoding_from_json(const json& doc, const std::string& path) {
  ObjectReader r(doc, path);
  EncodingConfig c;
  std::string type;
  if (!r.find("type")) throw ConfigError(r.child("type"), "missing encoding type");
  r.get("type", type);
  const auto tag = parse_encoding_tag(type);
  if (!tag) throw ConfigError(r.child("type"), "unknown encoding '" + type + "'");
  c.tag = *tag;

  r.get("p_mut", c.p_mut);
  switch (c.tag) {
    case EncodingTag::Direct:
      break;
    case EncodingTag::Dictionary:
      r.get("block_rows", c.block_rows);
      r.get("block_cols", c.block_cols);
      break;
    case EncodingTag::Parametric:
      r.get("sigma", c.sigma);
      r.get("rectangles", c.rectangles);
      break;
    case EncodingTag::Cppn:
      r.get("sigma", c.sigma);
      r.get("hidden_layers", c.hidden_layers);
      r.get("neurons", c.neurons);
      r.get("thresholds", c.thresholds);
      break;
    case EncodingTag::Ca:
      r.get("sigma", c.sigma);
      r.get("mask_size", c.mask_size);
      r.get("steps", c.steps);
      break;
  }
  r.finish();
  return c;
}

json encoding_to_json(const EncodingConfig& c) {
  json out{{"type", std::string(to_string(c.tag))}, {"p_mut", c.p_mut}};
  switch (c.tag) {
    case EncodingTag::Direct:
      break;
    case EncodingTag::Dictionary:
      out["block_rows"] = c.block_rows;
      out["block_cols"] = c.block_cols;
      break;
    case EncodingTag::Parametric:
      out["sigma"] = c.sigma;
      out["rectangles"] = c.rectangles;
      break;
    case EncodingTag::Cppn:
      out["sigma"] = c.sigma;
      out["hidden_layers"] = c.hidden_layers;
      out["neurons"] = c.neurons;
      out["thresholds"] = c.thresholds;
      break;
    case EncodingTag::Ca:
      out["sigma"] = c.sigma;
      out["mask_size"] = c.mask_size;
      out["steps"] = c.steps;
      break;
  }
  return out;
}

ExperimentConfig config_from_json(const json& doc) {
  ObjectReader r(doc, "");
  ExperimentConfig c;

  if (const json* g = r.find("grid")) {
    ObjectReader gr(*g, "grid");
    gr.get("rows", c.grid.rows);
    gr.get("cols", c.grid.cols);
    gr.finish();
  }

  const json* encs = r.find("encodings");
  if (!encs) throw ConfigError("encodings", "missing");
  if (!encs->is_array()) throw ConfigError("encodings", "expected an array");
  for (std::size_t i = 0; i < encs->size(); ++i) {
    auto e = encoding_from_json((*encs)[i], "encodings[" + std::to_string(i) + "]");
    e.shape = c.grid;
    c.encodings.push_back(e);
  }

  r.get("label", c.label);
  if (c.label.empty()) c.label = default_label(c.encodings);

  std::string axis = "rows";
  r.get("inflow_axis", axis);
  if (axis == "rows") {
    c.inflow = InflowAxis::RowAxis;
  } else if (axis == "cols") {
    c.inflow = InflowAxis::ColAxis;
  } else {
    throw ConfigError("inflow_axis", "must be 'rows' or 'cols'");
  }

  if (const json* l = r.find("loop")) {
    ObjectReader lr(*l, "loop");
    lr.get("init_population", c.loop.init_population);
    lr.get("children_per_generation", c.loop.children_per_generation);
    lr.get("max_generations", c.loop.max_generations);
    lr.finish();
  }
  if (const json* a = r.find("archive")) {
    ObjectReader ar(*a, "archive");
    if (const json* x = ar.find("area")) c.archive.area = axis_from(*x, "archive.area", c.archive.area);
    if (const json* x = ar.find("count")) {
      c.archive.count = axis_from(*x, "archive.count", c.archive.count);
    }
    ar.finish();
  }
  r.get("replicates", c.replicates);
  r.get("base_seed", c.base_seed);
  r.get("snapshot_cadence", c.snapshot_cadence);
  r.get("output_dir", c.output_dir);
  r.get("workers", c.workers);
  r.finish();

  validate(c);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json encs = json::array();
  for (const auto& e : c.encodings) encs.push_back(encoding_to_json(e));
  return {{"label", c.label},
          {"encodings", encs},
          {"grid", {{"rows", c.grid.rows}, {"cols", c.grid.cols}}},
          {"inflow_axis", c.inflow == InflowAxis::RowAxis ? "rows" : "cols"},
          {"loop",
           {{"init_population", c.loop.init_population},
            {"children_per_generation", c.loop.children_per_generation},
            {"max_generations", c.loop.max_generations}}},
          {"archive", {{"area", axis_to(c.archive.area)}, {"count", axis_to(c.archive.count)}}},
          {"replicates", c.replicates},
          {"base_seed", c.base_seed},
          {"snapshot_cadence", c.snapshot_cadence},
          {"output_dir", c.output_dir},
          {"workers", c.workers}};
}

void validate(const ExperimentConfig& c) {
  if (c.encodings.empty()) throw ConfigError("encodings", "must not be empty");
  if (c.grid.rows < 1) throw ConfigError("grid.rows", "must be >= 1");
  if (c.grid.cols < 1) throw ConfigError("grid.cols", "must be >= 1");
  for (std::size_t i = 0; i < c.encodings.size(); ++i) {
    const std::string path = "encodings[" + std::to_string(i) + "]";
    if (c.encodings[i].shape != c.grid) throw ConfigError(path, "shape differs from grid");
    validate(c.encodings[i], path);
  }
  if (c.loop.init_population < 1) throw ConfigError("loop.init_population", "must be >= 1");
  if (c.loop.children_per_generation < 1) {
    throw ConfigError("loop.children_per_generation", "must be >= 1");
  }
  if (c.replicates < 1) throw ConfigError("replicates", "must be >= 1");
  if (c.snapshot_cadence < 1) throw ConfigError("snapshot_cadence", "must be >= 1");
  if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
}

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError(std::string(assignment), "override must look like key.path=value");
  }
  const std::string path(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));

  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError(path, "empty path segment");
    const bool numeric = key.find_first_not_of("0123456789") == std::string::npos;
    if (numeric && node->is_array()) {
      const auto idx = std::stoul(key);
      if (idx >= node->size()) throw ConfigError(path, "index out of range");
      node = &(*node)[idx];
    } else {
      if (!node->is_object() && !node->is_null()) throw ConfigError(path, "cannot descend into a value");
      node = &(*node)[key];
    }
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = std::move(value);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), std::string("invalid JSON at byte ") + std::to_string(e.byte));
  }
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides) {
  json doc = read_json_file(path);
  for (const auto& o : overrides) apply_override(doc, o);
  return config_from_json(doc);
}

std::string config_hash(const ExperimentConfig& config) {
  json doc = config_to_json(config);
  doc.erase("output_dir");
  doc.erase("workers");
  const std::string text = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace massqd
