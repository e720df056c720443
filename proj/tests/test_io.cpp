#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mrsearch/error.hpp"
#include "mrsearch/io.hpp"

using namespace mrsearch;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "mrsearch_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("polygon json round trip") {
  const OrthoPolygon p = inflate_cut(16, 3);
  CHECK(polygon_from_json(polygon_to_json(p, 5.0)) == p);
  const auto path = scratch("poly.json").string();
  save_polygon(p, path, 5.0);
  CHECK(load_polygon(path) == p);
  CHECK(polygon_from_json(R"({"vertices": [[0,0],[2.0,0],[2,1],[0,1]], "cell_size_m": 5})").area() == 2);
}

TEST_CASE("polygon json errors") {
  CHECK(code_of([] { polygon_from_json(R"({"vertices": [[0,0],[1.5,0],[1.5,1],[0,1]]})"); }) ==
        ErrorCode::kNonIntegralVertex);
  CHECK(code_of([] { polygon_from_json(R"({"vertices": [[0,0],[1,1],[0,1]]})"); }) == ErrorCode::kNonOrthogonalEdge);
  CHECK(code_of([] { polygon_from_json("{not json"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { polygon_from_json(R"({"points": []})"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { load_polygon("/nonexistent/poly.json"); }) == ErrorCode::kIoError);
}

TEST_CASE("instance json") {
  const auto inst = instance_from_json(R"({"S": [1,2,3,1,2,3], "q": 2, "T": 6})");
  CHECK(inst.values.size() == 6);
  CHECK(inst.q == 2);
  CHECK(inst.target == 6);
  CHECK(code_of([] { instance_from_json(R"({"S": [1,2,4], "q": 1, "T": 6})"); }) == ErrorCode::kInstanceInvalid);
  CHECK(code_of([] { instance_from_json(R"({"S": [1,2,3]})"); }) == ErrorCode::kParseError);
}

TEST_CASE("rectangulation and curve json") {
  const GridGraph g = GridGraph::from_cells({{0, 0}, {1, 0}, {0, 1}});
  const std::string j = rectangulation_to_json(rectangulate(g, 0));
  CHECK(j.find("\"rectangles\"") != std::string::npos);
  CHECK(j.find("\"junctions\"") != std::string::npos);
  CHECK(j.find("\"straddle\"") != std::string::npos);
  CHECK(curve_to_json(gilbert_curve(1, 3)) == "[[0,0],[0,1],[0,2]]\n");
}

TEST_CASE("trace jsonl has one object per step") {
  SimConfig cfg;
  cfg.grid = std::make_shared<const GridGraph>(GridGraph::full(6, 6));
  cfg.strategy = Strategy::kRandom;
  cfg.k = 2;
  cfg.intruder = IntruderModel::kRandomWalk;
  cfg.seed = 9;
  cfg.record_trace = true;
  const TrialResult r = run_trial(cfg);
  const std::string text = trace_to_jsonl(r.trace);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n' ? 1 : 0;
  CHECK(lines == r.trace.size());
  CHECK(text.find("\"cost_deltas\"") != std::string::npos);
  if (r.captured) CHECK(text.find("\"capture\"") != std::string::npos);
}

TEST_CASE("sweep spec json sources") {
  const auto poly_path = scratch("sweep_poly.json");
  save_polygon(inflate_cut(12, 1), poly_path.string());
  const std::string text = R"({
    "instances": [
      {"id": "file", "file": "sweep_poly.json"},
      {"id": "inline", "polygon": {"vertices": [[0,0],[3,0],[3,3],[0,3]]}},
      {"id": "comb", "comb": {"spikes": [2,3], "spike_width": 1, "spike_gap": 1, "base_height": 1}, "scale": 2},
      {"id": "gen", "inflate_cut": {"vertices": 14, "seed": 5}, "beta": 2, "rectangulation_seed": 11}
    ],
    "strategies": ["rs", "SFC-G"],
    "k": {"from": 2, "to": 8, "step": 3},
    "intruders": ["static", "moving"],
    "trials": 5,
    "base_seed": 9,
    "max_steps": 1000
  })";
  const SweepSpec spec = sweep_spec_from_json(text, poly_path.parent_path().string());
  REQUIRE(spec.instances.size() == 4);
  CHECK(spec.instances[0].polygon == inflate_cut(12, 1));
  CHECK(spec.instances[1].polygon.area() == 9);
  CHECK(spec.instances[2].polygon.area() == 4 * (5 + 5));
  CHECK(spec.instances[2].beta_label == "2");
  CHECK(spec.instances[3].rectangulation_seed == std::optional<std::uint64_t>{11});
  CHECK(spec.strategies == std::vector<Strategy>{Strategy::kRandom, Strategy::kSfcGuarded});
  CHECK(spec.k_values == std::vector<int>{2, 5, 8});
  CHECK(spec.intruders == std::vector<IntruderModel>{IntruderModel::kStatic, IntruderModel::kRandomWalk});
  CHECK(spec.trials == 5);
  CHECK(spec.base_seed == 9);
  CHECK(spec.max_steps == std::optional<std::int64_t>{1000});

  const auto spec_path = scratch("sweep.json");
  std::ofstream(spec_path) << text;
  CHECK(load_sweep_spec(spec_path.string()).instances.size() == 4);

  const SweepSpec preset = sweep_spec_from_json(R"({"preset": "areas", "trials": 3, "strategies": ["rs"]})");
  CHECK(preset.instances.size() == 3);
  CHECK(preset.trials == 3);
  CHECK(preset.k_values == std::vector<int>{10});

  CHECK(code_of([] { sweep_spec_from_json(R"({"instances": [{"id": "x"}], "strategies": ["rs"], "k": [1], "intruders": ["static"]})"); }) ==
        ErrorCode::kParseError);
  CHECK(code_of([] { sweep_spec_from_json(R"({"preset": "areas", "trials": 0})"); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { sweep_spec_from_json(R"({"preset": "areas", "strategies": ["zzz"]})"); }) ==
        ErrorCode::kInvalidArgument);
}
