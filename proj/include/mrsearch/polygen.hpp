#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrsearch/geometry.hpp"

namespace mrsearch {

// Random simple orthogonal polygon with exactly `target_vertices` vertices.
// Starts from the unit square and performs (target_vertices - 4) / 2
// inflate-cut rounds, each adding two vertices. The lattice is compressed
// after every round, so the result fits in a (n/2 - 1) x (n/2 - 1) box.
OrthoPolygon inflate_cut(int target_vertices, std::uint64_t seed);

// A 3-Partition instance: 3q positive integers that should split into q
// triples each summing to T.
struct ThreePartitionInstance {
  std::vector<int> values;
  int q = 0;
  int target = 0;  // T

  // Structural validity (|S| = 3q, sum = qT, positive entries). Throws
  // InstanceInvalid.
  void validate() const;

  // Strong-sense bounds T/4 < n_i < T/2. Violations are tolerated by every
  // operation here and only reported.
  bool strong_bounds_hold() const;
};

// Base rectangle with upward rectangular spikes, listed left to right.
struct CombSpec {
  int base_height = 1;
  std::vector<int> spike_lengths;
  int spike_width = 1;
  int spike_gap = 1;

  int base_width() const {
    return static_cast<int>(spike_lengths.size()) * (spike_width + spike_gap) + spike_gap;
  }
  std::int64_t base_area() const {
    return static_cast<std::int64_t>(base_width()) * base_height;
  }
  std::int64_t spike_area() const;
};

OrthoPolygon make_comb(const CombSpec& spec);

// The reduction gadget: one spike per instance value, depth n_i, unit gap.
OrthoPolygon build_comb(const ThreePartitionInstance& inst, int spike_width, int base_height);
CombSpec comb_spec_for(const ThreePartitionInstance& inst, int spike_width, int base_height);

using Triple = std::vector<int>;  // zero-based value indices

struct ScheduleReport {
  // q rounds, one triple per round, every round lasting as long as the
  // slowest triple: q * max_j(sum of triple j). Equals qT exactly when every
  // triple sums to T.
  std::int64_t makespan = 0;
  bool balanced = false;  // every triple sums to T
  std::vector<int> triple_sums;

  // Walk simulated on the comb: ascent steps spent clearing fresh spike cells
  // per triple (must equal triple_sums) and the remaining steps (descents and
  // base travel) reported separately.
  std::vector<std::int64_t> simulated_clearing;
  std::vector<std::int64_t> simulated_overhead;
  std::int64_t simulated_makespan = 0;
  std::int64_t max_overhead = 0;
};

// Throws NotAPartition (wrong count, repeated or out-of-range index) or
// TripleSizeError (a group without exactly three indices).
ScheduleReport verify_partition_schedule(const ThreePartitionInstance& inst,
                                         const std::vector<Triple>& partition);

// Heuristic spike count: boundary edges whose two end vertices are convex and
// whose two neighboring edges both end in reflex vertices, with the
// protrusion rectangle of depth min(side lengths) lying inside the polygon.
int count_spikes(const OrthoPolygon& poly);

}  // namespace mrsearch
