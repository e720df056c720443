#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "mrsearch/decomposition.hpp"
#include "mrsearch/error.hpp"
#include "mrsearch/geometry.hpp"
#include "mrsearch/harness.hpp"
#include "mrsearch/io.hpp"
#include "mrsearch/planning.hpp"
#include "mrsearch/polygen.hpp"
#include "mrsearch/sfc.hpp"
#include "mrsearch/sim.hpp"

namespace py = pybind11;
using namespace mrsearch;

namespace {

using XY = std::pair<int, int>;

OrthoPolygon to_polygon(const std::vector<XY>& vertices) {
  std::vector<Point> pts;
  for (auto [x, y] : vertices) pts.push_back({x, y});
  return validate_polygon(std::move(pts));
}

std::vector<XY> from_polygon(const OrthoPolygon& p) {
  std::vector<XY> out;
  for (const Point& v : p.vertices()) out.emplace_back(v.x, v.y);
  return out;
}

std::vector<XY> from_cells(const std::vector<Cell>& cells) {
  std::vector<XY> out;
  for (Cell c : cells) out.emplace_back(c.col, c.row);
  return out;
}

py::dict summary_dict(const SummaryRow& r) {
  py::dict d;
  d["instance"] = r.instance;
  d["strategy"] = std::string(to_string(r.strategy));
  d["intruder"] = std::string(to_string(r.intruder));
  d["k"] = r.k;
  d["trials"] = r.trials;
  d["feasible"] = r.feasible;
  d["capture_rate"] = r.capture_rate;
  d["mean_steps"] = r.mean_steps;
  d["sd"] = r.sd;
  d["ci95"] = r.ci95;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-robot intruder search in orthogonal polygons";

  static py::exception<Error> error(m, "MrsearchError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("validate_polygon", [](const std::vector<XY>& v) { return from_polygon(to_polygon(v)); },
        py::arg("vertices"), "Canonical CCW vertex list translated to the origin.");
  m.def("inflate_cut", [](int n, std::uint64_t seed) { return from_polygon(inflate_cut(n, seed)); },
        py::arg("vertices"), py::arg("seed") = 0);
  m.def("make_comb",
        [](const std::vector<int>& spikes, int width, int gap, int base_height) {
          return from_polygon(make_comb(CombSpec{base_height, spikes, width, gap}));
        },
        py::arg("spikes"), py::arg("spike_width") = 1, py::arg("spike_gap") = 1, py::arg("base_height") = 1);
  m.def("count_spikes", [](const std::vector<XY>& v) { return count_spikes(to_polygon(v)); }, py::arg("vertices"));
  m.def("rasterize", [](const std::vector<XY>& v) { return from_cells(rasterize(to_polygon(v)).cells()); },
        py::arg("vertices"), "Interior cells as (col, row) in row-major order.");

  m.def("verify_partition_schedule",
        [](const std::vector<int>& values, int q, int target, const std::vector<Triple>& partition) {
          const ScheduleReport r = verify_partition_schedule(ThreePartitionInstance{values, q, target}, partition);
          py::dict d;
          d["makespan"] = r.makespan;
          d["balanced"] = r.balanced;
          d["triple_sums"] = r.triple_sums;
          d["simulated_makespan"] = r.simulated_makespan;
          return d;
        },
        py::arg("values"), py::arg("q"), py::arg("target"), py::arg("partition"));

  m.def("rectangulate",
        [](const std::vector<XY>& v, std::uint64_t seed) {
          const Rectangulation r = rectangulate(rasterize(to_polygon(v)), seed);
          py::list rects;
          for (const Rectangle& rect : r.rects) rects.append(py::make_tuple(rect.anchor.col, rect.anchor.row, rect.width, rect.height));
          py::list juncs;
          for (const Junction& j : r.junctions) juncs.append(py::make_tuple(j.first, j.second, j.straddle.size()));
          return py::make_tuple(rects, juncs);
        },
        py::arg("vertices"), py::arg("seed") = 0,
        "Rectangles as (col, row, width, height) and junctions as (first, second, length).");
  m.def("allocate_by_area", &allocate_by_area, py::arg("areas"), py::arg("robots"));

  m.def("gilbert_curve", [](int w, int h) { return from_cells(gilbert_curve(w, h).cells); }, py::arg("width"), py::arg("height"));
  m.def("repaired_curve",
        [](int w, int h) { return from_cells(repair_curve(gilbert_curve(w, h), GridGraph::full(w, h)).cells); },
        py::arg("width"), py::arg("height"));

  m.def("hungarian",
        [](const std::vector<std::vector<double>>& cost) {
          const Assignment a = hungarian(cost);
          return py::make_tuple(a.target_of, a.total_cost);
        },
        py::arg("cost"));
  m.def("astar",
        [](const std::vector<XY>& v, XY start, XY goal) {
          const GridGraph g = rasterize(to_polygon(v));
          const CostMap cm(g.size());
          return from_cells(astar(g, cm, {start.first, start.second}, {goal.first, goal.second}).cells);
        },
        py::arg("vertices"), py::arg("start"), py::arg("goal"));

  m.def("run_trial",
        [](const std::vector<XY>& v, const std::string& strategy, int k, const std::string& intruder,
           std::uint64_t seed, std::uint64_t rectangulation_seed, std::optional<std::int64_t> max_steps) {
          SimConfig cfg;
          cfg.grid = std::make_shared<const GridGraph>(rasterize(to_polygon(v)));
          cfg.strategy = parse_strategy(strategy);
          cfg.intruder = parse_intruder(intruder);
          cfg.k = k;
          cfg.seed = seed;
          cfg.rectangulation_seed = rectangulation_seed;
          cfg.max_steps = max_steps;
          TrialResult r;
          {
            py::gil_scoped_release release;
            r = run_trial(cfg);
          }
          py::dict d;
          d["captured"] = r.captured;
          d["steps"] = r.steps;
          d["cells"] = r.area_cells;
          return d;
        },
        py::arg("vertices"), py::arg("strategy"), py::arg("k"), py::arg("intruder") = "static", py::arg("seed") = 0,
        py::arg("rectangulation_seed") = 0, py::arg("max_steps") = py::none());

  m.def("preset_names", &preset_names);
  m.def("sweep",
        [](const std::string& spec_json, int workers) {
          const SweepSpec spec = sweep_spec_from_json(spec_json);
          SweepResult r;
          {
            py::gil_scoped_release release;
            r = run_sweep(spec, workers);
          }
          py::list rows;
          for (const SummaryRow& row : r.rows) rows.append(summary_dict(row));
          return rows;
        },
        py::arg("spec_json"), py::arg("workers") = 0, "Run a sweep spec given as JSON text; returns summary dicts.");
  m.def("sweep_csv",
        [](const std::string& spec_json, int workers) {
          const SweepSpec spec = sweep_spec_from_json(spec_json);
          py::gil_scoped_release release;
          return to_csv(run_sweep(spec, workers).rows);
        },
        py::arg("spec_json"), py::arg("workers") = 0);
}
