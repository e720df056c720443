#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mrsearch/decomposition.hpp"
#include "mrsearch/geometry.hpp"
#include "mrsearch/planning.hpp"
#include "mrsearch/sfc.hpp"

namespace mrsearch {

enum class Strategy { kSfc, kSfcGuarded, kRandom, kCooperative, kBaseline };

enum class IntruderModel {
  kStatic,
  kRandomWalk,    // uniform over {stay} and the in-graph 4-neighbors
  kRandomMoving,  // uniform over the in-graph 4-neighbors only
};

std::string_view to_string(Strategy s);
std::string_view to_string(IntruderModel m);
// Accepts the names produced by to_string plus a few aliases ("sfc-g",
// "random", "moving", ...). Throws InvalidArgument.
Strategy parse_strategy(std::string_view name);
IntruderModel parse_intruder(std::string_view name);

// Rectangulation of an instance plus one repaired patrol curve per rectangle
// (as dense cell indices). Shared read-only by every SFC trial on the grid.
struct SfcLayout {
  Rectangulation rectangulation;
  std::vector<std::vector<int>> curves;
};

SfcLayout make_sfc_layout(const GridGraph& g, std::uint64_t rectangulation_seed);

// Smallest team the strategy can field on this layout: one searcher per
// rectangle, plus one guard per junction for SFC-G, and 1 otherwise.
int min_robots(Strategy s, const SfcLayout* layout);

struct SimConfig {
  std::shared_ptr<const GridGraph> grid;
  // Built from rectangulation_seed when an SFC strategy needs it and it is
  // not supplied.
  std::shared_ptr<const SfcLayout> layout;
  Strategy strategy = Strategy::kRandom;
  int k = 1;
  IntruderModel intruder = IntruderModel::kStatic;
  // Step budget; defaults to 100 x |cells|.
  std::optional<std::int64_t> max_steps;
  std::uint64_t seed = 0;
  std::uint64_t rectangulation_seed = 0;

  // Optional explicit placements (RS, CRS and baseline only for robots).
  std::vector<Cell> robot_starts;
  std::optional<Cell> intruder_start;

  bool record_trace = false;
  std::string instance_label;
};

enum class Role { kSearcher, kGuard };

struct Robot {
  int id = 0;
  Role role = Role::kSearcher;
  int position = 0;  // dense cell index

  // RS / CRS: planned path (dense indices, starting at the planning cell) and
  // the offset of the current cell within it.
  std::vector<int> plan;
  std::size_t progress = 0;

  // SFC: patrol segment within the rectangle's curve.
  int rect = -1;
  std::size_t segment_begin = 0;
  std::size_t segment_length = 0;
  PatrolCursor cursor;

  bool at_target() const { return plan.empty() || progress + 1 >= plan.size(); }
};

struct StepRecord {
  std::int64_t t = 0;
  std::vector<Cell> robots;
  Cell intruder;
  std::vector<std::pair<Cell, std::int64_t>> cost_bumps;  // cell, new unit count
  std::vector<std::string> events;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct TrialResult {
  bool captured = false;
  std::int64_t steps = 0;
  Strategy strategy = Strategy::kRandom;
  IntruderModel intruder = IntruderModel::kStatic;
  int k = 0;
  std::uint64_t seed = 0;
  std::size_t area_cells = 0;
  std::string instance_label;
  std::vector<StepRecord> trace;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

struct StepEvents {
  bool captured = false;
  bool swap_capture = false;
  bool reassigned = false;       // CRS global reassignment happened this step
  std::vector<int> replanned;    // robots that drew a new target this step
};

// One trial as a sequential state machine. Construction performs the
// initial placement (and the step-0 capture check).
class Simulation {
 public:
  explicit Simulation(SimConfig cfg);

  // Robots move, guards stay, cost bumps (RS/CRS), intruder moves, capture
  // check; then the step counter advances.
  StepEvents step();

  bool finished() const { return captured_ || steps_ >= max_steps_; }
  bool captured() const { return captured_; }
  std::int64_t steps() const { return steps_; }
  std::int64_t max_steps() const { return max_steps_; }

  const GridGraph& grid() const { return *cfg_.grid; }
  const SimConfig& config() const { return cfg_; }
  const std::vector<Robot>& robots() const { return robots_; }
  Cell robot_cell(std::size_t i) const { return grid().cell(robots_.at(i).position); }
  Cell intruder_cell() const { return grid().cell(intruder_); }
  const CostMap& cost_map() const { return costs_; }
  const SfcLayout* layout() const { return cfg_.layout.get(); }

  // Guard cell per junction (SFC-G placement rule).
  static Cell guard_cell(const Junction& j);

  TrialResult result() const;

 private:
  void place();
  bool detect() const;
  int move_sfc(Robot& r);
  int move_random(Robot& r, StepEvents& ev);
  void reassign_cooperative(StepEvents& ev);
  int move_baseline(Robot& r);
  int sample_target_except(int current);
  int move_intruder();
  void record(const std::vector<std::pair<Cell, std::int64_t>>& bumps,
              std::vector<std::string> events);

  SimConfig cfg_;
  std::mt19937_64 rng_;
  std::vector<Robot> robots_;
  int intruder_ = 0;
  CostMap costs_;
  std::int64_t steps_ = 0;
  std::int64_t max_steps_ = 0;
  bool captured_ = false;

  // Baseline pursuit: distance field of the intruder cell it was built for.
  std::vector<int> pursuit_field_;
  int pursuit_source_ = -1;

  std::vector<StepRecord> trace_;
};

// Uniform draw from {stay} and the neighbors (or neighbors only).
int intruder_move(const GridGraph& g, int position, IntruderModel model, std::mt19937_64& rng);

Simulation init_trial(const SimConfig& cfg);
TrialResult run_trial(const SimConfig& cfg);

}  // namespace mrsearch
