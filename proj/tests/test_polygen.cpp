#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "mrsearch/error.hpp"
#include "mrsearch/polygen.hpp"
#include "oracles.hpp"

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

// Strong instance: every value strictly between T/4 and T/2, shuffled.
ThreePartitionInstance random_instance(int q, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_t(12, 40);
  const int t = pick_t(rng);
  ThreePartitionInstance inst{{}, q, t};
  for (int j = 0; j < q; ++j) {
    for (;;) {
      std::uniform_int_distribution<int> v(t / 4 + 1, (t - 1) / 2);
      const int a = v(rng), b = v(rng), c = t - a - b;
      if (4 * c > t && 2 * c < t) {
        inst.values.insert(inst.values.end(), {a, b, c});
        break;
      }
    }
  }
  std::shuffle(inst.values.begin(), inst.values.end(), rng);
  return inst;
}

// Depth of every spike measured on the raster: cells above the base in the
// spike's first column.
std::vector<int> measured_depths(const CombSpec& spec) {
  const GridGraph g = rasterize(make_comb(spec));
  std::vector<int> out;
  for (std::size_t i = 0; i < spec.spike_lengths.size(); ++i) {
    const int col = spec.spike_gap + static_cast<int>(i) * (spec.spike_width + spec.spike_gap);
    int depth = 0;
    while (g.contains({col, spec.base_height + depth})) ++depth;
    out.push_back(depth);
  }
  return out;
}

}  // namespace

TEST_CASE("inflate_cut small targets") {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const OrthoPolygon sq = inflate_cut(4, seed);
    CHECK(sq.vertex_count() == 4);
    CHECK(sq.area() == 1);
  }
  const OrthoPolygon l = inflate_cut(6, 1);
  CHECK(l.vertex_count() == 6);
  CHECK(validate_polygon(l.vertices()) == l);
  CHECK(code_of([] { inflate_cut(5, 0); }) == ErrorCode::kOddTargetVertices);
  CHECK(code_of([] { inflate_cut(2, 0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("inflate_cut properties over many seeds") {
  int runs = 0;
  for (int n = 4; n <= 40; n += 2) {
    for (std::uint64_t seed = 1000; seed < 1030; ++seed) {
      const OrthoPolygon p = inflate_cut(n, seed);
      REQUIRE(static_cast<int>(p.vertex_count()) == n);
      REQUIRE(validate_polygon(p.vertices()) == p);
      REQUIRE(p.width() <= n / 2 - 1);
      REQUIRE(p.height() <= n / 2 - 1);
      const GridGraph g = rasterize(p);
      REQUIRE(g.is_connected());
      REQUIRE(static_cast<std::int64_t>(g.size()) == p.area());
      ++runs;
    }
  }
  CHECK(runs >= 500);
}

TEST_CASE("inflate_cut is deterministic per seed") {
  CHECK(inflate_cut(30, 7) == inflate_cut(30, 7));
  std::set<std::vector<std::pair<int, int>>> shapes;
  for (std::uint64_t s = 0; s < 20; ++s) {
    std::vector<std::pair<int, int>> v;
    for (const Point& p : inflate_cut(20, s).vertices()) v.emplace_back(p.x, p.y);
    shapes.insert(v);
  }
  CHECK(shapes.size() > 10);
}

TEST_CASE("instance validation") {
  const ThreePartitionInstance ok{{1, 2, 3, 1, 2, 3}, 2, 6};
  CHECK_NOTHROW(ok.validate());
  CHECK_FALSE(ok.strong_bounds_hold());
  CHECK(ThreePartitionInstance{{5, 6, 7}, 1, 18}.strong_bounds_hold());
  CHECK(code_of([] { ThreePartitionInstance{{1, 2, 4}, 1, 6}.validate(); }) == ErrorCode::kInstanceInvalid);
  CHECK(code_of([] { ThreePartitionInstance{{1, 2}, 1, 3}.validate(); }) == ErrorCode::kInstanceInvalid);
  CHECK(code_of([] { ThreePartitionInstance{{0, 3, 3}, 1, 6}.validate(); }) == ErrorCode::kInstanceInvalid);
  CHECK(code_of([] { build_comb(ThreePartitionInstance{{1, 2, 4}, 1, 6}, 1, 1); }) == ErrorCode::kInstanceInvalid);
}

TEST_CASE("comb for S = {1, 2, 3}") {
  const ThreePartitionInstance inst{{1, 2, 3}, 1, 6};
  const OrthoPolygon p = build_comb(inst, 1, 1);
  const GridGraph g = rasterize(p);
  // Base 3 * (1 + 1) + 1 = 7 wide, 1 high.
  CHECK(g.size() == 7 + 1 + 2 + 3);
  CHECK(measured_depths(comb_spec_for(inst, 1, 1)) == std::vector<int>{1, 2, 3});
  CHECK(count_spikes(p) == 3);
}

TEST_CASE("uniform comb") {
  // 3/4 < 1 < 3/2, so this one is strong after all.
  const ThreePartitionInstance inst{{1, 1, 1, 1, 1, 1}, 2, 3};
  CHECK(inst.strong_bounds_hold());
  const OrthoPolygon p = build_comb(inst, 1, 1);
  CHECK(count_spikes(p) == 6);
  CHECK(rasterize(p).size() == 13 + 6);
}

TEST_CASE("comb cell count and spike depths in closed form") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int q = 1 + trial % 3;
    const ThreePartitionInstance inst = random_instance(q, rng);
    const int width = 1 + trial % 3;
    const int base = 1 + (trial / 3) % 3;
    const CombSpec spec = comb_spec_for(inst, width, base);
    CHECK(spec.base_width() == 3 * q * (width + 1) + 1);
    const GridGraph g = rasterize(make_comb(spec));
    std::int64_t spikes = 0;
    for (int n : inst.values) spikes += n;
    CHECK(static_cast<std::int64_t>(g.size()) == spec.base_area() + width * spikes);
    CHECK(measured_depths(spec) == inst.values);
    CHECK(count_spikes(make_comb(spec)) == 3 * q);
  }
}

TEST_CASE("count_spikes on simple shapes") {
  CHECK(count_spikes(validate_polygon({{0, 0}, {4, 0}, {4, 3}, {0, 3}})) == 0);
  CHECK(count_spikes(validate_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}})) == 0);
  CHECK(count_spikes(make_comb(CombSpec{4, {6, 12, 8, 14}, 2, 2})) == 4);
  CHECK(count_spikes(make_comb(CombSpec{2, {3, 1, 5, 2, 4}, 3, 2})) == 5);
  // A T: one spike on top of a bar.
  CHECK(count_spikes(validate_polygon({{0, 0}, {5, 0}, {5, 1}, {3, 1}, {3, 4}, {2, 4}, {2, 1}, {0, 1}})) == 1);
}

TEST_CASE("schedule examples") {
  const ThreePartitionInstance inst{{1, 2, 3, 1, 2, 3}, 2, 6};
  const ScheduleReport r = verify_partition_schedule(inst, {{0, 1, 2}, {3, 4, 5}});
  CHECK(r.makespan == 12);
  CHECK(r.balanced);
  CHECK(r.triple_sums == std::vector<int>{6, 6});
  CHECK(r.simulated_clearing == std::vector<std::int64_t>{6, 6});

  // Sums 5 and 7.
  const ScheduleReport bad = verify_partition_schedule(inst, {{0, 1, 3}, {2, 4, 5}});
  CHECK_FALSE(bad.balanced);
  CHECK(bad.makespan != 12);

  CHECK(code_of([&] { verify_partition_schedule(inst, {{0, 1, 2}, {2, 4, 5}}); }) == ErrorCode::kNotAPartition);
  CHECK(code_of([&] { verify_partition_schedule(inst, {{0, 1, 2}, {3, 4, 6}}); }) == ErrorCode::kNotAPartition);
  CHECK(code_of([&] { verify_partition_schedule(inst, {{0, 1, 2}}); }) == ErrorCode::kNotAPartition);
  CHECK(code_of([&] { verify_partition_schedule(inst, {{0, 1}, {2, 3, 4, 5}}); }) == ErrorCode::kTripleSizeError);
}

TEST_CASE("makespan equals qT exactly for balanced partitions") {
  std::mt19937_64 rng(11);
  std::vector<ThreePartitionInstance> instances{{{1, 2, 3, 1, 2, 3}, 2, 6}};
  for (int i = 0; i < 20; ++i) instances.push_back(random_instance(1 + i % 3, rng));
  for (const auto& inst : instances) {
    const std::int64_t qt = static_cast<std::int64_t>(inst.q) * inst.target;
    for (const auto& part : oracle::all_partitions(inst.q)) {
      bool balanced = true;
      for (const auto& t : part) {
        balanced = balanced && inst.values[t[0]] + inst.values[t[1]] + inst.values[t[2]] == inst.target;
      }
      const ScheduleReport r = verify_partition_schedule(inst, part);
      REQUIRE(r.balanced == balanced);
      REQUIRE((r.makespan == qt) == balanced);
      for (std::size_t j = 0; j < part.size(); ++j) REQUIRE(r.simulated_clearing[j] == r.triple_sums[j]);
    }
  }
}
