#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrsearch/geometry.hpp"
#include "mrsearch/sim.hpp"

namespace mrsearch {

struct SweepInstance {
  std::string id;
  OrthoPolygon polygon;
  std::string beta_label;  // informational, e.g. "4"
  std::optional<std::uint64_t> rectangulation_seed;
};

// Cartesian sweep: every instance x strategy x k x intruder model is one
// cell, run `trials` times.
struct SweepSpec {
  std::vector<SweepInstance> instances;
  std::vector<Strategy> strategies;
  std::vector<int> k_values;
  std::vector<IntruderModel> intruders;
  int trials = 100;
  std::uint64_t base_seed = 1;
  std::optional<std::int64_t> max_steps;  // default 100 x |cells|

  void validate() const;
};

struct SummaryRow {
  std::string instance;
  Strategy strategy = Strategy::kRandom;
  IntruderModel intruder = IntruderModel::kStatic;
  int k = 0;
  int trials = 0;
  bool feasible = true;
  double capture_rate = 0.0;
  // Over captured trials only; NaN when nothing was captured.
  double mean_steps = 0.0;
  double sd = 0.0;
  double ci95 = 0.0;
};

struct SweepResult {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<TrialResult>> trials;  // per row, empty when infeasible
  std::vector<std::uint64_t> seeds;              // every trial seed, in job order
};

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t cell, std::uint64_t trial);
std::uint64_t rectangulation_seed_for(const SweepSpec& spec, std::size_t instance_index);

// Worker count from MRSEARCH_WORKERS, else the hardware concurrency.
int default_workers();

// Results do not depend on `workers`; 0 picks default_workers().
SweepResult run_sweep(const SweepSpec& spec, int workers = 0);

// Mean, unbiased standard deviation and 1.96 sd / sqrt(n) over captured
// trials, plus the capture rate. Throws EmptyInput.
SummaryRow summarize(const std::vector<TrialResult>& results);

// Fixed columns: instance,strategy,intruder,k,trials,capture_rate,mean_steps,sd,ci95.
// Undefined statistics (infeasible cells, no captures) are left empty.
std::string to_csv(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> parse_csv(std::string_view text);
void emit_csv(const std::vector<SummaryRow>& rows, const std::string& path);
std::vector<SummaryRow> read_csv(const std::string& path);

enum class PlotKind { kLine, kBar };
PlotKind parse_plot_kind(std::string_view name);

// Line: mean steps against k, one polyline and CI band per
// (instance, strategy, intruder) series. Bar: one bar per feasible row,
// grouped by instance. Infeasible rows are skipped.
std::string render_svg(const std::vector<SummaryRow>& rows, PlotKind kind,
                       const std::string& title = "");
void emit_svg(const std::vector<SummaryRow>& rows, PlotKind kind, const std::string& path,
              const std::string& title = "");

std::vector<std::string> preset_names();
// Built-in experiment sweeps: "spikes4", "shapes", "areas", "beta".
SweepSpec make_preset(std::string_view name, std::uint64_t base_seed = 1);

}  // namespace mrsearch
