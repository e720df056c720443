#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <set>

#include "mrsearch/error.hpp"
#include "mrsearch/polygen.hpp"
#include "mrsearch/sim.hpp"

using namespace mrsearch;

namespace {

std::shared_ptr<const GridGraph> share(GridGraph g) { return std::make_shared<const GridGraph>(std::move(g)); }

SimConfig base_config(std::shared_ptr<const GridGraph> g, Strategy s, int k, IntruderModel m, std::uint64_t seed) {
  SimConfig cfg;
  cfg.grid = std::move(g);
  cfg.strategy = s;
  cfg.k = k;
  cfg.intruder = m;
  cfg.seed = seed;
  return cfg;
}

// Expected capture time of a shortest-path pursuer starting at the left end
// of an n-cell corridor, intruder at i, exact by backward induction over the
// robot position (it advances every step).
double corridor_expectation(int n, int intruder_start, IntruderModel model) {
  // e[r][i]: expected remaining steps with robot at r < i.
  std::vector<std::vector<double>> e(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int r = n - 2; r >= 0; --r) {
    for (int i = r + 1; i < n; ++i) {
      std::vector<int> options;
      if (model == IntruderModel::kRandomWalk) options.push_back(i);
      if (i + 1 < n) options.push_back(i + 1);
      options.push_back(i - 1);
      const int rn = r + 1;
      double total = 0.0;
      for (int in : options) {
        const bool caught = in == rn || (rn == i && in == r);
        total += caught ? 0.0 : e[static_cast<std::size_t>(rn)][static_cast<std::size_t>(in)];
      }
      e[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = 1.0 + total / static_cast<double>(options.size());
    }
  }
  return e[0][static_cast<std::size_t>(intruder_start)];
}

}  // namespace

TEST_CASE("names round trip") {
  for (Strategy s : {Strategy::kSfc, Strategy::kSfcGuarded, Strategy::kRandom, Strategy::kCooperative, Strategy::kBaseline}) {
    CHECK(parse_strategy(to_string(s)) == s);
  }
  for (IntruderModel m : {IntruderModel::kStatic, IntruderModel::kRandomWalk, IntruderModel::kRandomMoving}) {
    CHECK(parse_intruder(to_string(m)) == m);
  }
  CHECK(parse_strategy("SFC-G") == Strategy::kSfcGuarded);
  CHECK(parse_intruder("moving") == IntruderModel::kRandomWalk);
  CHECK_THROWS_AS(parse_strategy("nope"), Error);
}

TEST_CASE("one robot per cell captures at step zero") {
  const auto g = share(GridGraph::full(4, 3));
  SimConfig cfg = base_config(g, Strategy::kRandom, static_cast<int>(g->size()), IntruderModel::kRandomWalk, 5);
  cfg.robot_starts = g->cells();
  const TrialResult r = run_trial(cfg);
  CHECK(r.captured);
  CHECK(r.steps == 0);
}

TEST_CASE("SFC needs one robot per rectangle") {
  // Seven-rectangle layout: a comb of three spikes gives base pieces plus spikes.
  const auto g = share(rasterize(inflate_cut(30, 2)));
  auto layout = std::make_shared<const SfcLayout>(make_sfc_layout(*g, 1));
  const int rects = static_cast<int>(layout->rectangulation.rects.size());
  REQUIRE(rects > 1);
  SimConfig cfg = base_config(g, Strategy::kSfc, rects - 1, IntruderModel::kStatic, 0);
  cfg.layout = layout;
  try {
    init_trial(cfg);
    FAIL("expected TooFewRobots");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooFewRobots);
  }
  cfg.k = rects;
  CHECK_NOTHROW(init_trial(cfg));
  cfg.strategy = Strategy::kSfcGuarded;
  CHECK(min_robots(Strategy::kSfcGuarded, layout.get()) ==
        rects + static_cast<int>(layout->rectangulation.junctions.size()));
  if (!layout->rectangulation.junctions.empty()) CHECK_THROWS_AS(init_trial(cfg), Error);
}

TEST_CASE("initial state is deterministic per seed") {
  const auto g = share(rasterize(inflate_cut(24, 8)));
  for (Strategy s : {Strategy::kRandom, Strategy::kCooperative, Strategy::kBaseline, Strategy::kSfc}) {
    SimConfig cfg = base_config(g, s, 12, IntruderModel::kRandomWalk, 77);
    const Simulation a(cfg), b(cfg);
    REQUIRE(a.robots().size() == b.robots().size());
    for (std::size_t i = 0; i < a.robots().size(); ++i) CHECK(a.robot_cell(i) == b.robot_cell(i));
    CHECK(a.intruder_cell() == b.intruder_cell());
    CHECK(a.max_steps() == 100 * static_cast<std::int64_t>(g->size()));
  }
}

TEST_CASE("co-location before moving is a capture") {
  const auto g = share(GridGraph::full(3, 3));
  SimConfig cfg = base_config(g, Strategy::kRandom, 1, IntruderModel::kRandomWalk, 1);
  cfg.robot_starts = {{1, 1}};
  cfg.intruder_start = Cell{1, 1};
  const Simulation sim(cfg);
  CHECK(sim.captured());
  CHECK(sim.finished());
  CHECK(sim.steps() == 0);
}

TEST_CASE("swapping cells is a capture") {
  const auto g = share(GridGraph::full(1, 2));
  SimConfig cfg = base_config(g, Strategy::kBaseline, 1, IntruderModel::kRandomMoving, 3);
  cfg.robot_starts = {{0, 0}};
  cfg.intruder_start = Cell{0, 1};
  Simulation sim(cfg);
  REQUIRE_FALSE(sim.captured());
  const StepEvents ev = sim.step();
  CHECK(ev.captured);
  CHECK(ev.swap_capture);
  CHECK(sim.robot_cell(0) == Cell{0, 1});
  CHECK(sim.intruder_cell() == Cell{0, 0});
}

TEST_CASE("adjacent is not captured") {
  const auto g = share(GridGraph::full(2, 2));
  SimConfig cfg = base_config(g, Strategy::kBaseline, 1, IntruderModel::kStatic, 0);
  cfg.robot_starts = {{0, 0}};
  cfg.intruder_start = Cell{1, 1};
  Simulation sim(cfg);
  sim.step();
  CHECK(manhattan(sim.robot_cell(0), sim.intruder_cell()) == 1);
  CHECK_FALSE(sim.captured());
  sim.step();
  CHECK(sim.captured());
  CHECK(sim.steps() == 2);
}

TEST_CASE("baseline reaches a static intruder in exactly its distance") {
  const auto g = share(rasterize(inflate_cut(30, 13).scaled(2)));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(g->size()) - 1);
  for (int t = 0; t < 50; ++t) {
    const Cell a = g->cell(pick(rng)), b = g->cell(pick(rng));
    SimConfig cfg = base_config(g, Strategy::kBaseline, 1, IntruderModel::kStatic, 0);
    cfg.robot_starts = {a};
    cfg.intruder_start = b;
    const TrialResult r = run_trial(cfg);
    CHECK(r.captured);
    CHECK(r.steps == static_cast<std::int64_t>(dijkstra(*g, a, b).size()) - 1);
  }
}

TEST_CASE("corridor pursuit matches the exact Markov expectation") {
  const int n = 20;
  const auto g = share(GridGraph::full(n, 1));
  for (IntruderModel m : {IntruderModel::kRandomWalk, IntruderModel::kRandomMoving}) {
    for (int start : {1, 7, 19}) {
      const int trials = 20000;
      double sum = 0.0, sq = 0.0;
      std::int64_t worst = 0;
      for (int t = 0; t < trials; ++t) {
        SimConfig cfg = base_config(g, Strategy::kBaseline, 1, m, static_cast<std::uint64_t>(t) * 7919 + start);
        cfg.robot_starts = {{0, 0}};
        cfg.intruder_start = Cell{start, 0};
        const TrialResult r = run_trial(cfg);
        REQUIRE(r.captured);
        sum += static_cast<double>(r.steps);
        sq += static_cast<double>(r.steps) * static_cast<double>(r.steps);
        worst = std::max(worst, r.steps);
      }
      const double mean = sum / trials;
      const double se = std::sqrt((sq / trials - mean * mean) / trials);
      const double expect = corridor_expectation(n, start, m);
      CHECK(worst <= n - 1);
      CHECK(std::abs(mean - expect) <= 4.0 * se + 1e-9);
    }
  }
}

TEST_CASE("intruder moves are uniform") {
  std::mt19937_64 rng(99);
  const GridGraph corridor = GridGraph::full(5, 1);
  const int mid = corridor.index_of({2, 0});
  std::map<int, int> freq;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++freq[intruder_move(corridor, mid, IntruderModel::kRandomWalk, rng)];
  REQUIRE(freq.size() == 3);
  double chi2 = 0.0;
  for (auto [cell, count] : freq) {
    const double e = draws / 3.0;
    chi2 += (count - e) * (count - e) / e;
  }
  CHECK(chi2 < 9.21);  // chi-square, 2 dof, p = 0.01

  freq.clear();
  for (int i = 0; i < draws; ++i) ++freq[intruder_move(corridor, mid, IntruderModel::kRandomMoving, rng)];
  CHECK(freq.size() == 2);
  CHECK(freq.count(mid) == 0);

  const GridGraph single = GridGraph::full(1, 1);
  CHECK(intruder_move(single, 0, IntruderModel::kRandomWalk, rng) == 0);
  CHECK(intruder_move(single, 0, IntruderModel::kRandomMoving, rng) == 0);
  CHECK(intruder_move(corridor, mid, IntruderModel::kStatic, rng) == mid);
}

TEST_CASE("RS replans on arrival and moves in the same step") {
  const auto g = share(GridGraph::full(6, 6));
  SimConfig cfg = base_config(g, Strategy::kRandom, 1, IntruderModel::kStatic, 4);
  cfg.robot_starts = {{0, 0}};
  cfg.intruder_start = Cell{5, 5};
  cfg.max_steps = 5000;
  Simulation sim(cfg);
  std::set<int> targets;
  int replans = 0;
  while (!sim.finished()) {
    const Cell before = sim.robot_cell(0);
    const StepEvents ev = sim.step();
    // Never idle: every step moves the robot by one cell.
    REQUIRE(manhattan(before, sim.robot_cell(0)) == 1);
    if (!ev.replanned.empty()) {
      ++replans;
      const Robot& r = sim.robots()[0];
      REQUIRE(r.plan.front() == g->index_of(before));
      REQUIRE(r.plan.back() != r.plan.front());
      targets.insert(r.plan.back());
    }
  }
  CHECK(replans > 1);
}

TEST_CASE("RS targets cover every other cell") {
  const auto g = share(GridGraph::full(4, 4));
  std::set<int> targets;
  for (std::uint64_t seed = 0; seed < 200 && targets.size() < g->size(); ++seed) {
    SimConfig cfg = base_config(g, Strategy::kRandom, 1, IntruderModel::kStatic, seed);
    cfg.robot_starts = {{0, 0}};
    cfg.intruder_start = Cell{3, 3};
    Simulation sim(cfg);
    sim.step();
    targets.insert(sim.robots()[0].plan.back());
  }
  CHECK(targets.size() == g->size() - 1);
  CHECK(targets.count(0) == 0);
}

TEST_CASE("CRS waits for every robot before reassigning") {
  const auto g = share(rasterize(inflate_cut(20, 3).scaled(2)));
  SimConfig cfg = base_config(g, Strategy::kCooperative, 4, IntruderModel::kStatic, 12);
  cfg.max_steps = 400;
  Simulation sim(cfg);
  int reassignments = 0;
  while (!sim.finished()) {
    std::vector<Cell> before;
    std::vector<bool> done;
    for (std::size_t i = 0; i < sim.robots().size(); ++i) {
      before.push_back(sim.robot_cell(i));
      done.push_back(sim.robots()[i].at_target());
    }
    const bool all_done = std::all_of(done.begin(), done.end(), [](bool d) { return d; });
    const StepEvents ev = sim.step();
    REQUIRE(ev.reassigned == all_done);
    if (ev.reassigned) {
      ++reassignments;
      REQUIRE(ev.replanned.size() == sim.robots().size());
    } else {
      for (std::size_t i = 0; i < done.size(); ++i) {
        if (done[i]) REQUIRE(sim.robot_cell(i) == before[i]);
      }
    }
  }
  CHECK(reassignments >= 1);
}

TEST_CASE("CRS with one robot") {
  const auto g = share(GridGraph::full(5, 5));
  const TrialResult r = run_trial(base_config(g, Strategy::kCooperative, 1, IntruderModel::kRandomWalk, 8));
  CHECK(r.captured);
}

TEST_CASE("cost bumps count every robot every step") {
  const auto g = share(GridGraph::full(3, 3));
  SimConfig cfg = base_config(g, Strategy::kCooperative, 2, IntruderModel::kStatic, 1);
  cfg.robot_starts = {{0, 0}, {0, 0}};
  cfg.intruder_start = Cell{2, 2};
  cfg.max_steps = 50;
  Simulation sim(cfg);
  std::vector<std::int64_t> last(g->size(), 0);
  std::int64_t steps = 0;
  while (!sim.finished()) {
    sim.step();
    ++steps;
    std::int64_t total = 0;
    for (int i = 0; i < static_cast<int>(g->size()); ++i) {
      REQUIRE(sim.cost_map().units(i) >= last[static_cast<std::size_t>(i)]);
      last[static_cast<std::size_t>(i)] = sim.cost_map().units(i);
      total += last[static_cast<std::size_t>(i)];
    }
    REQUIRE(total == 2 * steps);
  }

  // Baseline and SFC never touch the cost map.
  SimConfig b = base_config(g, Strategy::kBaseline, 2, IntruderModel::kRandomWalk, 1);
  b.max_steps = 10;
  Simulation bs(b);
  while (!bs.finished()) bs.step();
  for (int i = 0; i < static_cast<int>(g->size()); ++i) CHECK(bs.cost_map().units(i) == 0);
}

TEST_CASE("positions stay in the grid and trials are reproducible") {
  const auto g = share(rasterize(inflate_cut(26, 21).scaled(2)));
  for (Strategy s : {Strategy::kSfc, Strategy::kSfcGuarded, Strategy::kRandom, Strategy::kCooperative, Strategy::kBaseline}) {
    for (IntruderModel m : {IntruderModel::kStatic, IntruderModel::kRandomWalk}) {
      SimConfig cfg = base_config(g, s, 30, m, 555);
      cfg.record_trace = true;
      cfg.instance_label = "x";
      const TrialResult a = run_trial(cfg);
      const TrialResult b = run_trial(cfg);
      CHECK(a == b);
      CHECK(a.trace.size() == static_cast<std::size_t>(a.steps) + 1);
      for (const StepRecord& rec : a.trace) {
        CHECK(g->contains(rec.intruder));
        for (const Cell& c : rec.robots) REQUIRE(g->contains(c));
      }
      if (a.captured) CHECK(a.steps <= 100 * static_cast<std::int64_t>(g->size()));
    }
  }
}

TEST_CASE("zero step budget") {
  const auto g = share(GridGraph::full(4, 4));
  SimConfig cfg = base_config(g, Strategy::kRandom, 1, IntruderModel::kRandomWalk, 0);
  cfg.robot_starts = {{0, 0}};
  cfg.intruder_start = Cell{3, 3};
  cfg.max_steps = 0;
  const TrialResult r = run_trial(cfg);
  CHECK_FALSE(r.captured);
  CHECK(r.steps == 0);
}

TEST_CASE("SFC patrol follows the curve and captures static intruders") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = share(rasterize(inflate_cut(16 + 2 * static_cast<int>(seed % 8), seed).scaled(2)));
    auto layout = std::make_shared<const SfcLayout>(make_sfc_layout(*g, seed));
    const int k = min_robots(Strategy::kSfc, layout.get()) + static_cast<int>(seed % 4);
    std::size_t bound = 0;
    SimConfig cfg = base_config(g, Strategy::kSfc, k, IntruderModel::kStatic, seed);
    cfg.layout = layout;
    Simulation sim(cfg);
    for (const Robot& r : sim.robots()) {
      REQUIRE(r.role == Role::kSearcher);
      REQUIRE(r.position == layout->curves[static_cast<std::size_t>(r.rect)][r.segment_begin]);
      bound = std::max(bound, patrol_period(r.segment_length));
    }
    while (!sim.finished()) {
      std::vector<int> before;
      for (const Robot& r : sim.robots()) before.push_back(r.position);
      sim.step();
      for (std::size_t i = 0; i < before.size(); ++i) {
        const Robot& r = sim.robots()[i];
        REQUIRE((r.segment_length == 1 || manhattan(g->cell(before[i]), g->cell(r.position)) == 1));
      }
    }
    CHECK(sim.captured());
    CHECK(static_cast<std::size_t>(sim.steps()) <= bound);
  }
}

TEST_CASE("SFC-G guards sit on junctions and never move") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = share(rasterize(inflate_cut(20, seed + 100).scaled(2)));
    auto layout = std::make_shared<const SfcLayout>(make_sfc_layout(*g, seed));
    const auto& jns = layout->rectangulation.junctions;
    SimConfig cfg = base_config(g, Strategy::kSfcGuarded, min_robots(Strategy::kSfcGuarded, layout.get()) + 2,
                                IntruderModel::kRandomWalk, seed);
    cfg.layout = layout;
    cfg.record_trace = true;
    Simulation sim(cfg);
    std::vector<std::pair<std::size_t, int>> guards;  // robot index, junction
    int j = 0;
    for (std::size_t i = 0; i < sim.robots().size(); ++i) {
      if (sim.robots()[i].role == Role::kGuard) guards.emplace_back(i, j++);
    }
    REQUIRE(guards.size() == jns.size());
    const std::vector<int> owner = owner_map(*g, layout->rectangulation.rects);
    for (auto [i, jn] : guards) {
      const Junction& junction = jns[static_cast<std::size_t>(jn)];
      const Cell c = sim.robot_cell(i);
      CHECK(c == Simulation::guard_cell(junction));
      CHECK(owner[static_cast<std::size_t>(g->index_of(c))] == junction.first);
      bool on_straddle = false;
      for (const auto& [a, b] : junction.straddle) on_straddle = on_straddle || a == c;
      CHECK(on_straddle);
    }
    while (!sim.finished()) sim.step();
    const TrialResult r = sim.result();
    for (std::size_t t = 1; t < r.trace.size(); ++t) {
      for (auto [i, jn] : guards) {
        REQUIRE(r.trace[t].robots[i] == r.trace[0].robots[i]);
        // Crossing the guarded pair means stepping into or out of the
        // guard's cell: always a capture.
        const auto& pair = jns[static_cast<std::size_t>(jn)].straddle[jns[static_cast<std::size_t>(jn)].straddle.size() / 2];
        const Cell from = r.trace[t - 1].intruder, to = r.trace[t].intruder;
        const bool crossed = (from == pair.first && to == pair.second) || (from == pair.second && to == pair.first);
        if (crossed) REQUIRE(r.captured);
        if (crossed) REQUIRE(t + 1 == r.trace.size());
      }
    }
  }
}
