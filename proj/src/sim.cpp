#include "mrsearch/sim.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "mrsearch/error.hpp"

namespace mrsearch {
namespace {

constexpr int kTargetRetries = 64;

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

bool is_sfc(Strategy s) { return s == Strategy::kSfc || s == Strategy::kSfcGuarded; }

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kSfc: return "sfc";
    case Strategy::kSfcGuarded: return "sfc_g";
    case Strategy::kRandom: return "rs";
    case Strategy::kCooperative: return "crs";
    case Strategy::kBaseline: return "baseline";
  }
  return "unknown";
}

std::string_view to_string(IntruderModel m) {
  switch (m) {
    case IntruderModel::kStatic: return "static";
    case IntruderModel::kRandomWalk: return "random";
    case IntruderModel::kRandomMoving: return "random_moving";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  const std::string n = lower(name);
  if (n == "sfc") return Strategy::kSfc;
  if (n == "sfc_g" || n == "sfc-g" || n == "sfcg") return Strategy::kSfcGuarded;
  if (n == "rs" || n == "random") return Strategy::kRandom;
  if (n == "crs" || n == "cooperative") return Strategy::kCooperative;
  if (n == "baseline") return Strategy::kBaseline;
  throw Error(ErrorCode::kInvalidArgument, "unknown strategy '" + std::string(name) + "'");
}

IntruderModel parse_intruder(std::string_view name) {
  const std::string n = lower(name);
  if (n == "static" || n == "s-i" || n == "si") return IntruderModel::kStatic;
  if (n == "random" || n == "moving" || n == "m-i" || n == "mi") return IntruderModel::kRandomWalk;
  if (n == "random_moving" || n == "random-moving") return IntruderModel::kRandomMoving;
  throw Error(ErrorCode::kInvalidArgument, "unknown intruder model '" + std::string(name) + "'");
}

SfcLayout make_sfc_layout(const GridGraph& g, std::uint64_t rectangulation_seed) {
  SfcLayout layout;
  layout.rectangulation = rectangulate(g, rectangulation_seed);
  for (const Rectangle& rect : layout.rectangulation.rects) {
    const Curve placed = place_curve(rect, gilbert_curve(rect.width, rect.height));
    const Curve repaired = repair_curve(placed, g);
    std::vector<int> indices;
    indices.reserve(repaired.size());
    for (const Cell& c : repaired.cells) indices.push_back(g.index_of(c));
    layout.curves.push_back(std::move(indices));
  }
  return layout;
}

int min_robots(Strategy s, const SfcLayout* layout) {
  if (!is_sfc(s)) return 1;
  if (layout == nullptr) throw Error(ErrorCode::kInvalidArgument, "SFC strategies need a layout");
  const int rects = static_cast<int>(layout->rectangulation.rects.size());
  if (s == Strategy::kSfc) return rects;
  return rects + static_cast<int>(layout->rectangulation.junctions.size());
}

int intruder_move(const GridGraph& g, int position, IntruderModel model, std::mt19937_64& rng) {
  if (model == IntruderModel::kStatic) return position;
  int options[5];
  int count = 0;
  if (model == IntruderModel::kRandomWalk) options[count++] = position;
  for (int nb : g.neighbor_indices(position)) {
    if (nb != GridGraph::kNoCell) options[count++] = nb;
  }
  if (count == 0) return position;
  std::uniform_int_distribution<int> pick(0, count - 1);
  return options[pick(rng)];
}

Cell Simulation::guard_cell(const Junction& j) { return j.straddle[j.straddle.size() / 2].first; }

Simulation::Simulation(SimConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
  if (!cfg_.grid || cfg_.grid->empty()) {
    throw Error(ErrorCode::kInvalidArgument, "simulation needs a non-empty grid");
  }
  if (cfg_.k < 1) throw Error(ErrorCode::kTooFewRobots, "k must be >= 1");
  if (cfg_.max_steps && *cfg_.max_steps < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_steps must be >= 0");
  }
  max_steps_ = cfg_.max_steps.value_or(100 * static_cast<std::int64_t>(cfg_.grid->size()));
  if (is_sfc(cfg_.strategy) && !cfg_.layout) {
    cfg_.layout = std::make_shared<const SfcLayout>(make_sfc_layout(*cfg_.grid, cfg_.rectangulation_seed));
  }
  costs_ = CostMap(cfg_.grid->size());
  place();
  captured_ = detect();
  if (cfg_.record_trace) record({}, captured_ ? std::vector<std::string>{"capture"} : std::vector<std::string>{});
}

void Simulation::place() {
  const GridGraph& g = grid();
  std::uniform_int_distribution<int> any_cell(0, static_cast<int>(g.size()) - 1);

  if (is_sfc(cfg_.strategy)) {
    if (!cfg_.robot_starts.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "SFC placements are derived from the curves");
    }
    const SfcLayout& layout = *cfg_.layout;
    const int needed = min_robots(cfg_.strategy, &layout);
    if (cfg_.k < needed) {
      throw Error(ErrorCode::kTooFewRobots, std::string(to_string(cfg_.strategy)) + " needs " +
                                                std::to_string(needed) + " robots, got " +
                                                std::to_string(cfg_.k));
    }
    const auto& jns = layout.rectangulation.junctions;
    const int guards = cfg_.strategy == Strategy::kSfcGuarded ? static_cast<int>(jns.size()) : 0;
    const std::vector<int> counts = allocate_robots(layout.rectangulation.rects, cfg_.k - guards);
    for (std::size_t rect = 0; rect < counts.size(); ++rect) {
      const auto& curve = layout.curves[rect];
      const auto count = static_cast<std::size_t>(counts[rect]);
      if (count > curve.size()) {
        throw Error(ErrorCode::kTooManyRobots, std::to_string(count) + " robots on a curve of " +
                                                   std::to_string(curve.size()) + " cells");
      }
      for (std::size_t j = 0; j < count; ++j) {
        Robot r;
        r.id = static_cast<int>(robots_.size());
        r.rect = static_cast<int>(rect);
        r.segment_begin = j * curve.size() / count;
        const std::size_t next = (j + 1) * curve.size() / count;
        r.segment_length = next - r.segment_begin;
        r.position = curve[r.segment_begin];
        robots_.push_back(std::move(r));
      }
    }
    for (const Junction& jn : jns) {
      if (guards == 0) break;
      Robot r;
      r.id = static_cast<int>(robots_.size());
      r.role = Role::kGuard;
      r.position = g.index_of(guard_cell(jn));
      robots_.push_back(std::move(r));
    }
  } else if (!cfg_.robot_starts.empty()) {
    if (cfg_.robot_starts.size() != static_cast<std::size_t>(cfg_.k)) {
      throw Error(ErrorCode::kInvalidArgument, "robot_starts must list exactly k cells");
    }
    for (const Cell& c : cfg_.robot_starts) {
      const int idx = g.index_of(c);
      if (idx == GridGraph::kNoCell) throw Error(ErrorCode::kCellOutsideGraph, "robot start outside grid");
      Robot r;
      r.id = static_cast<int>(robots_.size());
      r.position = idx;
      robots_.push_back(std::move(r));
    }
  } else {
    for (int i = 0; i < cfg_.k; ++i) {
      Robot r;
      r.id = i;
      r.position = any_cell(rng_);
      robots_.push_back(std::move(r));
    }
  }

  if (cfg_.intruder_start) {
    intruder_ = g.index_of(*cfg_.intruder_start);
    if (intruder_ == GridGraph::kNoCell) {
      throw Error(ErrorCode::kCellOutsideGraph, "intruder start outside grid");
    }
  } else {
    intruder_ = any_cell(rng_);
  }
}

bool Simulation::detect() const {
  return std::any_of(robots_.begin(), robots_.end(), [&](const Robot& r) { return r.position == intruder_; });
}

int Simulation::move_sfc(Robot& r) {
  if (r.role == Role::kGuard) return r.position;
  const auto& curve = cfg_.layout->curves[static_cast<std::size_t>(r.rect)];
  r.cursor = patrol_step(r.cursor, r.segment_length);
  return curve[r.segment_begin + r.cursor.offset];
}

int Simulation::sample_target_except(int current) {
  const int n = static_cast<int>(grid().size());
  if (n <= 1) return current;
  std::uniform_int_distribution<int> any_cell(0, n - 1);
  for (int attempt = 0; attempt < kTargetRetries; ++attempt) {
    const int t = any_cell(rng_);
    if (t != current) return t;
  }
  return current;
}

int Simulation::move_random(Robot& r, StepEvents& ev) {
  if (r.at_target()) {
    const int target = sample_target_except(r.position);
    r.plan = target == r.position ? std::vector<int>{r.position}
                                  : astar_indices(grid(), costs_, r.position, target);
    r.progress = 0;
    ev.replanned.push_back(r.id);
  }
  if (!r.at_target()) ++r.progress;
  return r.plan[r.progress];
}

void Simulation::reassign_cooperative(StepEvents& ev) {
  const GridGraph& g = grid();
  const int k = static_cast<int>(robots_.size());
  std::uniform_int_distribution<int> any_cell(0, static_cast<int>(g.size()) - 1);
  std::vector<int> targets(static_cast<std::size_t>(k));
  for (int& t : targets) t = any_cell(rng_);

  // Costs equal the A* optimum for every pair; one weighted single-source
  // search per robot fills a whole row.
  std::vector<std::int64_t> matrix(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i) {
    const std::vector<std::int64_t> dist = weighted_costs_from(g, costs_, robots_[static_cast<std::size_t>(i)].position);
    for (int j = 0; j < k; ++j) {
      matrix[static_cast<std::size_t>(i) * k + j] = dist[static_cast<std::size_t>(targets[static_cast<std::size_t>(j)])];
    }
  }
  const std::vector<int> target_of = hungarian_exact(matrix, k);
  for (int i = 0; i < k; ++i) {
    Robot& r = robots_[static_cast<std::size_t>(i)];
    const int target = targets[static_cast<std::size_t>(target_of[static_cast<std::size_t>(i)])];
    r.plan = target == r.position ? std::vector<int>{r.position} : astar_indices(g, costs_, r.position, target);
    r.progress = 0;
    ev.replanned.push_back(r.id);
  }
  ev.reassigned = true;
}

int Simulation::move_baseline(Robot& r) {
  if (pursuit_source_ != intruder_) {
    pursuit_field_ = distance_field(grid(), intruder_);
    pursuit_source_ = intruder_;
  }
  return descend(grid(), pursuit_field_, r.position);
}

int Simulation::move_intruder() { return intruder_move(grid(), intruder_, cfg_.intruder, rng_); }

StepEvents Simulation::step() {
  StepEvents ev;
  if (finished()) return ev;

  std::vector<int> before(robots_.size());
  for (std::size_t i = 0; i < robots_.size(); ++i) before[i] = robots_[i].position;

  switch (cfg_.strategy) {
    case Strategy::kSfc:
    case Strategy::kSfcGuarded:
      for (Robot& r : robots_) r.position = move_sfc(r);
      break;
    case Strategy::kRandom:
      for (Robot& r : robots_) r.position = move_random(r, ev);
      break;
    case Strategy::kCooperative: {
      const bool all_done = std::all_of(robots_.begin(), robots_.end(), [](const Robot& r) { return r.at_target(); });
      if (all_done) reassign_cooperative(ev);
      for (Robot& r : robots_) {
        if (!r.at_target()) r.position = r.plan[++r.progress];
      }
      break;
    }
    case Strategy::kBaseline:
      for (Robot& r : robots_) r.position = move_baseline(r);
      break;
  }

  std::vector<std::pair<Cell, std::int64_t>> bumps;
  if (cfg_.strategy == Strategy::kRandom || cfg_.strategy == Strategy::kCooperative) {
    for (const Robot& r : robots_) {
      costs_.bump(r.position);
      if (cfg_.record_trace) bumps.emplace_back(grid().cell(r.position), costs_.units(r.position));
    }
  }

  const int intruder_before = intruder_;
  intruder_ = move_intruder();
  ++steps_;

  ev.captured = detect();
  if (!ev.captured && intruder_before != intruder_) {
    for (std::size_t i = 0; i < robots_.size(); ++i) {
      if (before[i] == intruder_ && robots_[i].position == intruder_before) {
        ev.captured = true;
        ev.swap_capture = true;
        break;
      }
    }
  }
  captured_ = ev.captured;

  if (cfg_.record_trace) {
    std::vector<std::string> events;
    if (ev.reassigned) events.emplace_back("reassign");
    for (int id : ev.replanned) events.push_back("replan:" + std::to_string(id));
    if (ev.swap_capture) events.emplace_back("swap_capture");
    if (ev.captured) events.emplace_back("capture");
    record(bumps, std::move(events));
  }
  return ev;
}

void Simulation::record(const std::vector<std::pair<Cell, std::int64_t>>& bumps,
                        std::vector<std::string> events) {
  StepRecord rec;
  rec.t = steps_;
  for (const Robot& r : robots_) rec.robots.push_back(grid().cell(r.position));
  rec.intruder = grid().cell(intruder_);
  rec.cost_bumps = bumps;
  rec.events = std::move(events);
  trace_.push_back(std::move(rec));
}

TrialResult Simulation::result() const {
  TrialResult out;
  out.captured = captured_;
  out.steps = steps_;
  out.strategy = cfg_.strategy;
  out.intruder = cfg_.intruder;
  out.k = cfg_.k;
  out.seed = cfg_.seed;
  out.area_cells = grid().size();
  out.instance_label = cfg_.instance_label;
  out.trace = trace_;
  return out;
}

Simulation init_trial(const SimConfig& cfg) { return Simulation(cfg); }

TrialResult run_trial(const SimConfig& cfg) {
  Simulation sim(cfg);
  while (!sim.finished()) sim.step();
  return sim.result();
}

}  // namespace mrsearch
