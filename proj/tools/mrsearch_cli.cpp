#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrsearch/decomposition.hpp"
#include "mrsearch/error.hpp"
#include "mrsearch/geometry.hpp"
#include "mrsearch/harness.hpp"
#include "mrsearch/io.hpp"
#include "mrsearch/polygen.hpp"
#include "mrsearch/sfc.hpp"
#include "mrsearch/sim.hpp"

namespace {

using namespace mrsearch;

void output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot intruder search in orthogonal polygons"};
  app.require_subcommand(1);

  // generate
  int gen_vertices = 20;
  std::uint64_t gen_seed = 0;
  double cell_size = 1.0;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Random orthogonal polygon by inflate-cut");
  gen->add_option("--vertices,-n", gen_vertices, "Vertex count (even, >= 4)")->required();
  gen->add_option("--seed", gen_seed);
  gen->add_option("--cell-size", cell_size, "Cell edge in metres (informational)");
  gen->add_option("-o,--output", gen_out);

  // comb
  std::string comb_spec;
  int comb_width = 1, comb_base = 1;
  std::string comb_out;
  auto* comb = app.add_subcommand("comb", "Comb polygon for a 3-partition instance");
  comb->add_option("--spec", comb_spec, "Instance JSON {S, q, T}")->required();
  comb->add_option("--width", comb_width, "Spike width");
  comb->add_option("--base-height", comb_base, "Base height");
  comb->add_option("-o,--output", comb_out);

  // verify
  std::string ver_spec, ver_partition;
  auto* ver = app.add_subcommand("verify-partition", "Makespan of a triple schedule on the comb");
  ver->add_option("--spec", ver_spec, "Instance JSON {S, q, T}")->required();
  ver->add_option("--partition", ver_partition, "JSON list of index triples")->required();

  // spikes
  std::string spk_poly;
  auto* spk = app.add_subcommand("spikes", "Count spikes of a polygon");
  spk->add_option("--poly", spk_poly)->required();

  // decompose
  std::string dec_poly, dec_out;
  std::uint64_t dec_seed = 0;
  auto* dec = app.add_subcommand("decompose", "Random rectangulation with junctions");
  dec->add_option("--poly", dec_poly)->required();
  dec->add_option("--seed", dec_seed);
  dec->add_option("-o,--output", dec_out);

  // curve
  int cur_w = 1, cur_h = 1;
  bool cur_repair = false;
  auto* cur = app.add_subcommand("curve", "Generalized Hilbert curve of a rectangle");
  cur->add_option("--width", cur_w)->required();
  cur->add_option("--height", cur_h)->required();
  cur->add_flag("--repair", cur_repair, "Replace diagonal steps with unit steps");

  // simulate
  std::string sim_poly, sim_strategy = "rs", sim_intruder = "static", sim_trace;
  int sim_k = 1;
  std::optional<std::int64_t> sim_max;
  std::uint64_t sim_seed = 0, sim_rect_seed = 0;
  auto* sim = app.add_subcommand("simulate", "Run one search trial");
  sim->add_option("--poly", sim_poly)->required();
  sim->add_option("--strategy", sim_strategy, "sfc | sfc_g | rs | crs | baseline");
  sim->add_option("--k", sim_k)->required();
  sim->add_option("--intruder", sim_intruder, "static | random | random_moving");
  sim->add_option("--max-steps", sim_max);
  sim->add_option("--seed", sim_seed);
  sim->add_option("--rect-seed", sim_rect_seed, "Rectangulation seed for sfc strategies");
  sim->add_option("--trace", sim_trace, "Write a JSONL step trace");

  // sweep
  std::string swp_spec, swp_preset, swp_out;
  int swp_workers = 0;
  std::optional<int> swp_trials;
  std::optional<std::uint64_t> swp_seed;
  auto* swp = app.add_subcommand("sweep", "Monte-Carlo sweep to CSV");
  auto* spec_opt = swp->add_option("--spec", swp_spec, "Sweep spec JSON");
  swp->add_option("--preset", swp_preset, "spikes4 | shapes | areas | beta")->excludes(spec_opt);
  swp->add_option("--trials", swp_trials, "Override trials per cell");
  swp->add_option("--seed", swp_seed, "Override the base seed");
  swp->add_option("--workers", swp_workers, "Worker threads (default MRSEARCH_WORKERS or all cores)");
  swp->add_option("-o,--output", swp_out);

  // plot
  std::string plt_csv, plt_kind = "line", plt_out, plt_title;
  auto* plt = app.add_subcommand("plot", "SVG figure from sweep CSV");
  plt->add_option("--csv", plt_csv)->required();
  plt->add_option("--kind", plt_kind, "line | bar");
  plt->add_option("--title", plt_title);
  plt->add_option("-o,--output", plt_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      output(gen_out, polygon_to_json(inflate_cut(gen_vertices, gen_seed), cell_size));
    } else if (*comb) {
      output(comb_out, polygon_to_json(build_comb(load_instance(comb_spec), comb_width, comb_base)));
    } else if (*ver) {
      const ThreePartitionInstance inst = load_instance(ver_spec);
      const auto triples = nlohmann::json::parse(read_file(ver_partition)).get<std::vector<Triple>>();
      const ScheduleReport r = verify_partition_schedule(inst, triples);
      nlohmann::json j{{"makespan", r.makespan},
                       {"qT", static_cast<std::int64_t>(inst.q) * inst.target},
                       {"balanced", r.balanced},
                       {"triple_sums", r.triple_sums},
                       {"simulated_makespan", r.simulated_makespan},
                       {"max_overhead", r.max_overhead}};
      std::cout << j.dump(2) << "\n";
    } else if (*spk) {
      std::cout << count_spikes(load_polygon(spk_poly)) << "\n";
    } else if (*dec) {
      const GridGraph g = rasterize(load_polygon(dec_poly));
      output(dec_out, rectangulation_to_json(rectangulate(g, dec_seed)));
    } else if (*cur) {
      Curve c = gilbert_curve(cur_w, cur_h);
      if (cur_repair) c = repair_curve(c, GridGraph::full(cur_w, cur_h));
      std::cout << curve_to_json(c);
    } else if (*sim) {
      SimConfig cfg;
      cfg.grid = std::make_shared<const GridGraph>(rasterize(load_polygon(sim_poly)));
      cfg.strategy = parse_strategy(sim_strategy);
      cfg.intruder = parse_intruder(sim_intruder);
      cfg.k = sim_k;
      cfg.max_steps = sim_max;
      cfg.seed = sim_seed;
      cfg.rectangulation_seed = sim_rect_seed;
      cfg.record_trace = !sim_trace.empty();
      cfg.instance_label = sim_poly;
      const TrialResult r = run_trial(cfg);
      if (!sim_trace.empty()) write_file(sim_trace, trace_to_jsonl(r.trace));
      nlohmann::json j{{"captured", r.captured},
                       {"steps", r.steps},
                       {"strategy", std::string(to_string(r.strategy))},
                       {"intruder", std::string(to_string(r.intruder))},
                       {"k", r.k},
                       {"seed", r.seed},
                       {"cells", r.area_cells}};
      std::cout << j.dump() << "\n";
    } else if (*swp) {
      if (swp_spec.empty() && swp_preset.empty()) throw Error(ErrorCode::kInvalidArgument, "need --spec or --preset");
      SweepSpec spec = swp_spec.empty() ? make_preset(swp_preset, swp_seed.value_or(1)) : load_sweep_spec(swp_spec);
      if (swp_trials) spec.trials = *swp_trials;
      if (swp_seed) spec.base_seed = *swp_seed;
      output(swp_out, to_csv(run_sweep(spec, swp_workers).rows));
    } else if (*plt) {
      output(plt_out, render_svg(read_csv(plt_csv), parse_plot_kind(plt_kind), plt_title));
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
