#pragma once

#include <string>
#include <vector>

#include "mrsearch/decomposition.hpp"
#include "mrsearch/geometry.hpp"
#include "mrsearch/harness.hpp"
#include "mrsearch/polygen.hpp"
#include "mrsearch/sfc.hpp"
#include "mrsearch/sim.hpp"

namespace mrsearch {

// Polygon file: {"vertices": [[x, y], ...], "cell_size_m": 5.0}.
// Non-integer coordinates throw NonIntegralVertex.
OrthoPolygon polygon_from_json(const std::string& text);
std::string polygon_to_json(const OrthoPolygon& poly, double cell_size_m = 1.0);
OrthoPolygon load_polygon(const std::string& path);
void save_polygon(const OrthoPolygon& poly, const std::string& path, double cell_size_m = 1.0);

// {"S": [...], "q": q, "T": T}
ThreePartitionInstance instance_from_json(const std::string& text);
ThreePartitionInstance load_instance(const std::string& path);

std::string rectangulation_to_json(const Rectangulation& r);
std::string curve_to_json(const Curve& c);

// One JSON object per line.
std::string trace_to_jsonl(const std::vector<StepRecord>& trace);

// Sweep spec JSON; relative "file" entries resolve against `base_dir`.
SweepSpec sweep_spec_from_json(const std::string& text, const std::string& base_dir = ".");
SweepSpec load_sweep_spec(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace mrsearch
