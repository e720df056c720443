#pragma once

#include <cstdint>
#include <vector>

#include "mrsearch/geometry.hpp"
#include "mrsearch/sfc.hpp"

namespace mrsearch {

// Per-cell re-traversal penalty. Costs are kept as integer counts of the
// 0.05 increment so path costs compare exactly; cost() converts back.
class CostMap {
 public:
  static constexpr double kIncrement = 0.05;
  // Weight units per cell entry: entering a cell costs 1 + cost, i.e.
  // kUnitsPerStep + units in increments of 0.05.
  static constexpr std::int64_t kUnitsPerStep = 20;

  CostMap() = default;
  explicit CostMap(std::size_t cells) : units_(cells, 0) {}

  std::size_t size() const noexcept { return units_.size(); }

  void bump(int index) { ++units_.at(static_cast<std::size_t>(index)); }
  // Throws CellOutsideGraph.
  void bump(const GridGraph& g, Cell c);

  std::int64_t units(int index) const { return units_[static_cast<std::size_t>(index)]; }
  double cost(int index) const { return static_cast<double>(units(index)) * kIncrement; }
  double cost(const GridGraph& g, Cell c) const;

  void set_units(int index, std::int64_t units) { units_.at(static_cast<std::size_t>(index)) = units; }
  void reset() { std::fill(units_.begin(), units_.end(), 0); }

  std::int64_t entry_weight(int index) const { return kUnitsPerStep + units(index); }

 private:
  std::vector<std::int64_t> units_;
};

// Minimum-cost path where entering a cell costs 1 + its re-traversal cost.
// Manhattan heuristic; ties prefer lower f, then lower h, then N, E, S, W
// expansion order. Throws CellOutsideGraph or Unreachable.
Curve astar(const GridGraph& g, const CostMap& cm, Cell start, Cell goal);
std::vector<int> astar_indices(const GridGraph& g, const CostMap& cm, int start, int goal);

// Unweighted shortest path. The path descends the BFS distance field of the
// goal, taking the first of N, E, S, W that gets one step closer.
Curve dijkstra(const GridGraph& g, Cell start, Cell goal);

// Hop distances from `source` to every cell (-1 when unreachable).
std::vector<int> distance_field(const GridGraph& g, int source);

// Next cell on the descent of a distance field, or `from` if already there.
int descend(const GridGraph& g, const std::vector<int>& field, int from);

// Weighted single-source costs in CostMap units (entry weights summed over
// entered cells); -1 when unreachable.
std::vector<std::int64_t> weighted_costs_from(const GridGraph& g, const CostMap& cm, int source);

// Sum over entered cells (all but the first) of 1 + cost. Throws
// CellOutsideGraph.
double path_cost(const GridGraph& g, const Curve& c, const CostMap& cm);
std::int64_t path_cost_units(const GridGraph& g, const Curve& c, const CostMap& cm);

struct Assignment {
  std::vector<int> target_of;  // robot index -> target index
  double total_cost = 0.0;
};

// Minimum-cost perfect matching; among optimal matchings the
// lexicographically smallest robot->target permutation is returned. Throws
// NonSquare, NegativeEntry, NonFiniteEntry.
Assignment hungarian(const std::vector<std::vector<double>>& cost);

// Integer version on a row-major n x n matrix, exact tie handling.
std::vector<int> hungarian_exact(const std::vector<std::int64_t>& cost, int n);

}  // namespace mrsearch
