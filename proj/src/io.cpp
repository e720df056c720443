#include "mrsearch/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mrsearch/error.hpp"

namespace mrsearch {
namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

int integral(const json& v, const char* what) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e9) return static_cast<int>(d);
    throw Error(ErrorCode::kNonIntegralVertex, std::string(what) + " is not an integer: " + v.dump());
  }
  throw Error(ErrorCode::kParseError, std::string(what) + " must be a number");
}

OrthoPolygon polygon_from(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw Error(ErrorCode::kParseError, "polygon needs a \"vertices\" array");
  }
  std::vector<Point> pts;
  for (const json& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2) throw Error(ErrorCode::kParseError, "vertex must be [x, y]");
    pts.push_back({integral(v[0], "vertex x"), integral(v[1], "vertex y")});
  }
  return validate_polygon(std::move(pts));
}

json cell_json(Cell c) { return json::array({c.col, c.row}); }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string(key) + ": " + e.what());
  }
}

OrthoPolygon instance_polygon(const json& j, const std::filesystem::path& base_dir, std::string& beta) {
  if (j.contains("polygon")) return polygon_from(j["polygon"]);
  if (j.contains("file")) {
    std::filesystem::path p = j["file"].get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return load_polygon(p.string());
  }
  if (j.contains("comb")) {
    const json& c = j["comb"];
    CombSpec spec;
    spec.spike_lengths = get_or<std::vector<int>>(c, "spikes", {});
    spec.spike_width = get_or<int>(c, "spike_width", 1);
    spec.spike_gap = get_or<int>(c, "spike_gap", 1);
    spec.base_height = get_or<int>(c, "base_height", 1);
    beta = std::to_string(spec.spike_lengths.size());
    return make_comb(spec).scaled(get_or<int>(j, "scale", 1));
  }
  if (j.contains("inflate_cut")) {
    const json& g = j["inflate_cut"];
    return inflate_cut(get_or<int>(g, "vertices", 4), get_or<std::uint64_t>(g, "seed", 0));
  }
  throw Error(ErrorCode::kParseError, "instance needs one of polygon, file, comb, inflate_cut");
}

SweepInstance instance_from(const json& j, const std::filesystem::path& base_dir, std::size_t index) {
  std::string beta;
  OrthoPolygon poly = instance_polygon(j, base_dir, beta);
  SweepInstance inst{get_or<std::string>(j, "id", "I" + std::to_string(index)), std::move(poly), beta, std::nullopt};
  if (j.contains("beta")) inst.beta_label = j["beta"].is_string() ? j["beta"].get<std::string>() : j["beta"].dump();
  if (j.contains("rectangulation_seed")) inst.rectangulation_seed = j["rectangulation_seed"].get<std::uint64_t>();
  return inst;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path);
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

OrthoPolygon polygon_from_json(const std::string& text) { return polygon_from(parse(text)); }

std::string polygon_to_json(const OrthoPolygon& poly, double cell_size_m) {
  json verts = json::array();
  for (const Point& p : poly.vertices()) verts.push_back({p.x, p.y});
  return json{{"vertices", verts}, {"cell_size_m", cell_size_m}}.dump() + "\n";
}

OrthoPolygon load_polygon(const std::string& path) { return polygon_from_json(read_file(path)); }

void save_polygon(const OrthoPolygon& poly, const std::string& path, double cell_size_m) {
  write_file(path, polygon_to_json(poly, cell_size_m));
}

ThreePartitionInstance instance_from_json(const std::string& text) {
  const json j = parse(text);
  ThreePartitionInstance inst;
  try {
    inst.values = j.at("S").get<std::vector<int>>();
    inst.q = j.at("q").get<int>();
    inst.target = j.at("T").get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  inst.validate();
  return inst;
}

ThreePartitionInstance load_instance(const std::string& path) { return instance_from_json(read_file(path)); }

std::string rectangulation_to_json(const Rectangulation& r) {
  json rects = json::array();
  for (const Rectangle& rect : r.rects) {
    rects.push_back({{"col", rect.anchor.col}, {"row", rect.anchor.row}, {"width", rect.width}, {"height", rect.height}});
  }
  json juncs = json::array();
  for (const Junction& jn : r.junctions) {
    json straddle = json::array();
    for (const auto& [a, b] : jn.straddle) straddle.push_back({cell_json(a), cell_json(b)});
    juncs.push_back({{"first", jn.first},
                     {"second", jn.second},
                     {"vertical", jn.vertical},
                     {"line", jn.line},
                     {"begin", jn.begin},
                     {"end", jn.end},
                     {"straddle", straddle}});
  }
  return json{{"rectangles", rects}, {"junctions", juncs}}.dump(2) + "\n";
}

std::string curve_to_json(const Curve& c) {
  json cells = json::array();
  for (Cell cell : c.cells) cells.push_back(cell_json(cell));
  return cells.dump() + "\n";
}

std::string trace_to_jsonl(const std::vector<StepRecord>& trace) {
  std::string out;
  for (const StepRecord& s : trace) {
    json robots = json::array();
    for (Cell c : s.robots) robots.push_back(cell_json(c));
    json bumps = json::array();
    for (const auto& [c, units] : s.cost_bumps) {
      bumps.push_back({{"cell", cell_json(c)}, {"units", units}, {"cost", static_cast<double>(units) * CostMap::kIncrement}});
    }
    out += json{{"t", s.t}, {"robots", robots}, {"intruder", cell_json(s.intruder)}, {"cost_deltas", bumps}, {"events", s.events}}
               .dump();
    out += '\n';
  }
  return out;
}

SweepSpec sweep_spec_from_json(const std::string& text, const std::string& base_dir) {
  const json j = parse(text);
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "sweep spec must be an object");
  SweepSpec spec;
  const auto base_seed = get_or<std::uint64_t>(j, "base_seed", 1);
  if (j.contains("preset")) {
    spec = make_preset(j["preset"].get<std::string>(), base_seed);
  } else {
    spec.base_seed = base_seed;
  }
  try {
    if (j.contains("instances")) {
      spec.instances.clear();
      std::size_t i = 0;
      for (const json& inst : j["instances"]) spec.instances.push_back(instance_from(inst, base_dir, i++));
    }
    if (j.contains("strategies")) {
      spec.strategies.clear();
      for (const json& s : j["strategies"]) spec.strategies.push_back(parse_strategy(s.get<std::string>()));
    }
    if (j.contains("intruders")) {
      spec.intruders.clear();
      for (const json& m : j["intruders"]) spec.intruders.push_back(parse_intruder(m.get<std::string>()));
    }
    if (j.contains("k")) {
      const json& k = j["k"];
      spec.k_values.clear();
      if (k.is_array()) {
        spec.k_values = k.get<std::vector<int>>();
      } else if (k.is_object()) {
        const int step = get_or<int>(k, "step", 1);
        if (step < 1) throw Error(ErrorCode::kInvalidArgument, "k step must be >= 1");
        for (int v = k.at("from").get<int>(); v <= k.at("to").get<int>(); v += step) spec.k_values.push_back(v);
      } else {
        spec.k_values.push_back(k.get<int>());
      }
    }
    spec.trials = get_or<int>(j, "trials", spec.trials);
    if (j.contains("max_steps") && !j["max_steps"].is_null()) spec.max_steps = j["max_steps"].get<std::int64_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  const std::filesystem::path p(path);
  return sweep_spec_from_json(read_file(path), p.has_parent_path() ? p.parent_path().string() : ".");
}

}  // namespace mrsearch
