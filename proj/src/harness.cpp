#include "mrsearch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "mrsearch/error.hpp"
#include "mrsearch/polygen.hpp"

namespace mrsearch {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct CellSpec {
  std::size_t instance = 0;
  Strategy strategy = Strategy::kRandom;
  int k = 0;
  IntruderModel intruder = IntruderModel::kStatic;
  bool feasible = true;
};

bool sfc_feasible(Strategy s, const SfcLayout& layout, int k) {
  if (k < min_robots(s, &layout)) return false;
  const int guards = s == Strategy::kSfcGuarded ? static_cast<int>(layout.rectangulation.junctions.size()) : 0;
  const std::vector<int> counts = allocate_robots(layout.rectangulation.rects, k - guards);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (static_cast<std::size_t>(counts[i]) > layout.curves[i].size()) return false;
  }
  return true;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double_or_nan(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "bad number '" + s + "'");
  }
}

SweepInstance comb_instance(std::string id, const CombSpec& spec, int scale = 1) {
  SweepInstance inst{std::move(id), make_comb(spec).scaled(scale),
                     std::to_string(spec.spike_lengths.size()), std::nullopt};
  return inst;
}

// Spike depths for a comb of `beta` spikes of width 2, gap 2 and base height
// 2 whose total area is `cells`, spread as evenly as possible.
CombSpec even_comb(int beta, int cells) {
  CombSpec spec{2, {}, 2, 2};
  spec.spike_lengths.assign(static_cast<std::size_t>(beta), 0);
  const auto base = static_cast<int>(spec.base_area());
  const int depth_total = (cells - base) / spec.spike_width;
  for (int i = 0; i < beta; ++i) {
    spec.spike_lengths[static_cast<std::size_t>(i)] = depth_total / beta + (i % 2 == 0 && i / 2 < depth_total % beta ? 1 : 0);
  }
  int sum = 0;
  for (int d : spec.spike_lengths) sum += d;
  for (int i = 0; sum < depth_total; i = (i + 1) % beta, ++sum) ++spec.spike_lengths[static_cast<std::size_t>(i)];
  return spec;
}

std::vector<int> k_range(int first, int last, int step) {
  std::vector<int> out;
  for (int k = first; k <= last; k += step) out.push_back(k);
  return out;
}

}  // namespace

void SweepSpec::validate() const {
  if (instances.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep has no instances");
  if (strategies.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep has no strategies");
  if (k_values.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep has no k values");
  if (intruders.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep has no intruder models");
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (max_steps && *max_steps < 0) throw Error(ErrorCode::kInvalidArgument, "max_steps must be >= 0");
  for (int k : k_values) {
    if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k values must be >= 1");
  }
  for (const SweepInstance& inst : instances) {
    if (inst.id.empty() || inst.id.find_first_of(",\n\"") != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "instance ids must be non-empty and free of commas");
    }
  }
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t cell, std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(base_seed) ^ cell) ^ (trial * 0xd1b54a32d192ed03ULL));
}

std::uint64_t rectangulation_seed_for(const SweepSpec& spec, std::size_t instance_index) {
  const SweepInstance& inst = spec.instances.at(instance_index);
  if (inst.rectangulation_seed) return *inst.rectangulation_seed;
  return splitmix64(spec.base_seed ^ 0x5bd1e995ULL ^ splitmix64(instance_index));
}

int default_workers() {
  if (const char* env = std::getenv("MRSEARCH_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  if (workers <= 0) workers = default_workers();

  const bool wants_layout = std::any_of(spec.strategies.begin(), spec.strategies.end(), [](Strategy s) {
    return s == Strategy::kSfc || s == Strategy::kSfcGuarded;
  });
  std::vector<std::shared_ptr<const GridGraph>> grids;
  std::vector<std::shared_ptr<const SfcLayout>> layouts;
  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    auto grid = std::make_shared<const GridGraph>(rasterize(spec.instances[i].polygon));
    layouts.push_back(wants_layout ? std::make_shared<const SfcLayout>(
                                         make_sfc_layout(*grid, rectangulation_seed_for(spec, i)))
                                   : nullptr);
    grids.push_back(std::move(grid));
  }

  std::vector<CellSpec> cells;
  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    for (Strategy s : spec.strategies) {
      for (int k : spec.k_values) {
        for (IntruderModel m : spec.intruders) {
          CellSpec c{i, s, k, m, true};
          if (s == Strategy::kSfc || s == Strategy::kSfcGuarded) c.feasible = sfc_feasible(s, *layouts[i], k);
          cells.push_back(c);
        }
      }
    }
  }

  struct Job {
    std::size_t cell;
    int trial;
  };
  std::vector<Job> jobs;
  SweepResult out;
  out.trials.resize(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (!cells[c].feasible) continue;
    out.trials[c].resize(static_cast<std::size_t>(spec.trials));
    for (int t = 0; t < spec.trials; ++t) {
      jobs.push_back({c, t});
      out.seeds.push_back(trial_seed(spec.base_seed, c, static_cast<std::uint64_t>(t)));
    }
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const CellSpec& cell = cells[jobs[j].cell];
      SimConfig cfg;
      cfg.grid = grids[cell.instance];
      cfg.layout = layouts[cell.instance];
      cfg.strategy = cell.strategy;
      cfg.k = cell.k;
      cfg.intruder = cell.intruder;
      cfg.max_steps = spec.max_steps;
      cfg.seed = out.seeds[j];
      cfg.rectangulation_seed = rectangulation_seed_for(spec, cell.instance);
      cfg.instance_label = spec.instances[cell.instance].id;
      try {
        out.trials[jobs[j].cell][static_cast<std::size_t>(jobs[j].trial)] = run_trial(cfg);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  const int thread_count = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < thread_count; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t c = 0; c < cells.size(); ++c) {
    const CellSpec& cell = cells[c];
    if (!cell.feasible) {
      SummaryRow row;
      row.instance = spec.instances[cell.instance].id;
      row.strategy = cell.strategy;
      row.intruder = cell.intruder;
      row.k = cell.k;
      row.trials = 0;
      row.feasible = false;
      row.capture_rate = row.mean_steps = row.sd = row.ci95 = std::numeric_limits<double>::quiet_NaN();
      out.rows.push_back(row);
    } else {
      out.rows.push_back(summarize(out.trials[c]));
    }
  }
  return out;
}

SummaryRow summarize(const std::vector<TrialResult>& results) {
  if (results.empty()) throw Error(ErrorCode::kEmptyInput, "no trial results to summarize");
  SummaryRow row;
  row.instance = results.front().instance_label;
  row.strategy = results.front().strategy;
  row.intruder = results.front().intruder;
  row.k = results.front().k;
  row.trials = static_cast<int>(results.size());

  std::vector<double> steps;
  for (const TrialResult& r : results) {
    if (r.captured) steps.push_back(static_cast<double>(r.steps));
  }
  row.capture_rate = static_cast<double>(steps.size()) / static_cast<double>(results.size());
  if (steps.empty()) {
    row.mean_steps = row.sd = row.ci95 = std::numeric_limits<double>::quiet_NaN();
    return row;
  }
  double sum = 0.0;
  for (double s : steps) sum += s;
  const double n = static_cast<double>(steps.size());
  row.mean_steps = sum / n;
  double ss = 0.0;
  for (double s : steps) ss += (s - row.mean_steps) * (s - row.mean_steps);
  row.sd = steps.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  row.ci95 = 1.96 * row.sd / std::sqrt(n);
  return row;
}

std::string to_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "instance,strategy,intruder,k,trials,capture_rate,mean_steps,sd,ci95\n";
  for (const SummaryRow& r : rows) {
    out += r.instance;
    out += ',';
    out += to_string(r.strategy);
    out += ',';
    out += to_string(r.intruder);
    out += ',' + std::to_string(r.k) + ',' + std::to_string(r.trials) + ',';
    out += format_number(r.capture_rate) + ',' + format_number(r.mean_steps) + ',' +
           format_number(r.sd) + ',' + format_number(r.ci95) + '\n';
  }
  return out;
}

std::vector<SummaryRow> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("instance,strategy,intruder,k,trials", 0) != 0) {
    throw Error(ErrorCode::kParseError, "missing CSV header");
  }
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 9) throw Error(ErrorCode::kParseError, "expected 9 columns: " + line);
    SummaryRow r;
    r.instance = f[0];
    r.strategy = parse_strategy(f[1]);
    r.intruder = parse_intruder(f[2]);
    try {
      r.k = std::stoi(f[3]);
      r.trials = std::stoi(f[4]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad integer field: " + line);
    }
    r.feasible = r.trials > 0;
    r.capture_rate = parse_double_or_nan(f[5]);
    r.mean_steps = parse_double_or_nan(f[6]);
    r.sd = parse_double_or_nan(f[7]);
    r.ci95 = parse_double_or_nan(f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path);
  out << to_csv(rows);
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

std::vector<SummaryRow> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

std::vector<std::string> preset_names() { return {"spikes4", "shapes", "areas", "beta"}; }

SweepSpec make_preset(std::string_view name, std::uint64_t base_seed) {
  SweepSpec spec;
  spec.base_seed = base_seed;
  spec.trials = 100;
  spec.intruders = {IntruderModel::kStatic, IntruderModel::kRandomWalk};
  spec.strategies = {Strategy::kSfc, Strategy::kSfcGuarded, Strategy::kRandom, Strategy::kCooperative,
                     Strategy::kBaseline};

  if (name == "spikes4") {
    // Four-spike comb of 152 cells: base 18 x 4 plus spikes of width 2.
    spec.instances.push_back(comb_instance("comb4", CombSpec{4, {6, 12, 8, 14}, 2, 2}));
    spec.k_values = k_range(2, 60, 3);
  } else if (name == "shapes") {
    // Three five-spike combs of 176 cells (4400 m^2 at 5 m cells): the same
    // spikes rearranged along the base.
    spec.instances.push_back(comb_instance("P0", CombSpec{2, {10, 14, 18, 12, 12}, 2, 2}));
    spec.instances.push_back(comb_instance("P1", CombSpec{2, {18, 12, 10, 14, 12}, 2, 2}));
    spec.instances.push_back(comb_instance("P2", CombSpec{2, {12, 18, 12, 10, 14}, 2, 2}));
    spec.k_values = {13};
  } else if (name == "areas") {
    // One five-spike comb of 44 cells scaled to 44, 176 and 396 cells.
    const CombSpec base{2, {4, 6, 3, 5, 4}, 1, 1};
    for (int scale = 1; scale <= 3; ++scale) {
      spec.instances.push_back(comb_instance("A" + std::to_string(scale), base, scale));
    }
    spec.k_values = {10};
  } else if (name == "beta") {
    // beta = 2..6 spikes at a fixed 160 cells (4000 m^2 at 5 m cells).
    for (int beta = 2; beta <= 6; ++beta) {
      spec.instances.push_back(comb_instance("B" + std::to_string(beta), even_comb(beta, 160)));
    }
    spec.k_values = {25};
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown preset '" + std::string(name) + "'");
  }
  return spec;
}

}  // namespace mrsearch
