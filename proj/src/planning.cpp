#include "mrsearch/planning.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "mrsearch/error.hpp"

namespace mrsearch {
namespace {

int checked_index(const GridGraph& g, Cell c) {
  const int idx = g.index_of(c);
  if (idx == GridGraph::kNoCell) {
    throw Error(ErrorCode::kCellOutsideGraph,
                "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")");
  }
  return idx;
}

Curve to_curve(const GridGraph& g, const std::vector<int>& path) {
  Curve c;
  c.cells.reserve(path.size());
  for (int idx : path) c.cells.push_back(g.cell(idx));
  return c;
}

// Kuhn-Munkres with potentials. Returns the column per row and leaves dual
// potentials satisfying cost - u - v >= 0, with equality on the matching.
template <typename T>
std::vector<int> solve_assignment(const std::vector<T>& cost, int n, std::vector<T>& u,
                                  std::vector<T>& v) {
  const T inf = std::numeric_limits<T>::max() / 4;
  auto a = [&](int i, int j) {
    return cost[static_cast<std::size_t>(i - 1) * n + static_cast<std::size_t>(j - 1)];
  };
  u.assign(static_cast<std::size_t>(n) + 1, T{});
  v.assign(static_cast<std::size_t>(n) + 1, T{});
  std::vector<int> p(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<T> minv(static_cast<std::size_t>(n) + 1, inf);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = p[static_cast<std::size_t>(j0)];
      T delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const T cur = a(i0, j) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_of(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j) col_of[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
  return col_of;
}

// Every optimal matching uses only edges that are tight under an optimal
// dual, so the lexicographically smallest optimum is the lexicographically
// smallest perfect matching of the tight-edge graph. Rows are fixed in turn,
// each to its smallest column that still admits a perfect matching,
// re-routing the current matching along an alternating path.
std::vector<int> lexicographic_optimum(const std::vector<std::vector<char>>& tight,
                                       std::vector<int> col_of) {
  const int n = static_cast<int>(col_of.size());
  std::vector<int> row_of(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) row_of[static_cast<std::size_t>(col_of[static_cast<std::size_t>(i)])] = i;

  std::vector<char> visited(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!tight[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
      if (col_of[static_cast<std::size_t>(i)] == j) break;
      const int holder = row_of[static_cast<std::size_t>(j)];
      if (holder < i) continue;  // owned by a fixed row
      const int freed = col_of[static_cast<std::size_t>(i)];
      std::fill(visited.begin(), visited.end(), 0);
      visited[static_cast<std::size_t>(j)] = 1;
      std::function<bool(int)> reroute = [&](int r) -> bool {
        for (int c = 0; c < n; ++c) {
          if (visited[static_cast<std::size_t>(c)] ||
              !tight[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) {
            continue;
          }
          visited[static_cast<std::size_t>(c)] = 1;
          if (c != freed) {
            const int next = row_of[static_cast<std::size_t>(c)];
            if (next <= i || !reroute(next)) continue;
          }
          col_of[static_cast<std::size_t>(r)] = c;
          row_of[static_cast<std::size_t>(c)] = r;
          return true;
        }
        return false;
      };
      if (reroute(holder)) {
        col_of[static_cast<std::size_t>(i)] = j;
        row_of[static_cast<std::size_t>(j)] = i;
        break;
      }
    }
  }
  return col_of;
}

}  // namespace

void CostMap::bump(const GridGraph& g, Cell c) { bump(checked_index(g, c)); }

double CostMap::cost(const GridGraph& g, Cell c) const { return cost(checked_index(g, c)); }

std::vector<int> astar_indices(const GridGraph& g, const CostMap& cm, int start, int goal) {
  const std::size_t n = g.size();
  const Cell goal_cell = g.cell(goal);
  auto h = [&](int idx) { return manhattan(g.cell(idx), goal_cell) * CostMap::kUnitsPerStep; };

  using Entry = std::tuple<std::int64_t, std::int64_t, std::uint64_t, int>;  // f, h, seq, cell
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::vector<std::int64_t> best(n, std::numeric_limits<std::int64_t>::max());
  std::vector<int> parent(n, GridGraph::kNoCell);
  std::vector<char> closed(n, 0);
  std::uint64_t seq = 0;

  best[static_cast<std::size_t>(start)] = 0;
  open.emplace(h(start), h(start), seq++, start);
  while (!open.empty()) {
    const auto [f, hv, order, cur] = open.top();
    open.pop();
    if (closed[static_cast<std::size_t>(cur)]) continue;
    closed[static_cast<std::size_t>(cur)] = 1;
    if (cur == goal) break;
    const std::int64_t g_cur = best[static_cast<std::size_t>(cur)];
    for (int nb : g.neighbor_indices(cur)) {
      if (nb == GridGraph::kNoCell || closed[static_cast<std::size_t>(nb)]) continue;
      const std::int64_t cand = g_cur + cm.entry_weight(nb);
      if (cand < best[static_cast<std::size_t>(nb)]) {
        best[static_cast<std::size_t>(nb)] = cand;
        parent[static_cast<std::size_t>(nb)] = cur;
        const std::int64_t hn = h(nb);
        open.emplace(cand + hn, hn, seq++, nb);
      }
    }
  }
  if (!closed[static_cast<std::size_t>(goal)]) {
    throw Error(ErrorCode::kUnreachable, "goal not reachable from start");
  }
  std::vector<int> path;
  for (int cur = goal; cur != GridGraph::kNoCell; cur = parent[static_cast<std::size_t>(cur)]) {
    path.push_back(cur);
    if (cur == start) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Curve astar(const GridGraph& g, const CostMap& cm, Cell start, Cell goal) {
  const int s = checked_index(g, start);
  const int t = checked_index(g, goal);
  if (cm.size() != g.size()) throw Error(ErrorCode::kInvalidArgument, "cost map size mismatch");
  return to_curve(g, astar_indices(g, cm, s, t));
}

std::vector<int> distance_field(const GridGraph& g, int source) {
  std::vector<int> dist(g.size(), -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(source)] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const int cur = frontier.front();
    frontier.pop();
    for (int nb : g.neighbor_indices(cur)) {
      if (nb != GridGraph::kNoCell && dist[static_cast<std::size_t>(nb)] < 0) {
        dist[static_cast<std::size_t>(nb)] = dist[static_cast<std::size_t>(cur)] + 1;
        frontier.push(nb);
      }
    }
  }
  return dist;
}

int descend(const GridGraph& g, const std::vector<int>& field, int from) {
  const int d = field[static_cast<std::size_t>(from)];
  if (d <= 0) return from;
  for (int nb : g.neighbor_indices(from)) {
    if (nb != GridGraph::kNoCell && field[static_cast<std::size_t>(nb)] == d - 1) return nb;
  }
  return from;
}

Curve dijkstra(const GridGraph& g, Cell start, Cell goal) {
  const int s = checked_index(g, start);
  const int t = checked_index(g, goal);
  const std::vector<int> field = distance_field(g, t);
  if (field[static_cast<std::size_t>(s)] < 0) {
    throw Error(ErrorCode::kUnreachable, "goal not reachable from start");
  }
  std::vector<int> path{s};
  while (path.back() != t) path.push_back(descend(g, field, path.back()));
  return to_curve(g, path);
}

std::vector<std::int64_t> weighted_costs_from(const GridGraph& g, const CostMap& cm, int source) {
  std::vector<std::int64_t> dist(g.size(), -1);
  using Entry = std::pair<std::int64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  dist[static_cast<std::size_t>(source)] = 0;
  open.emplace(0, source);
  while (!open.empty()) {
    const auto [d, cur] = open.top();
    open.pop();
    if (d != dist[static_cast<std::size_t>(cur)]) continue;
    for (int nb : g.neighbor_indices(cur)) {
      if (nb == GridGraph::kNoCell) continue;
      const std::int64_t cand = d + cm.entry_weight(nb);
      std::int64_t& slot = dist[static_cast<std::size_t>(nb)];
      if (slot < 0 || cand < slot) {
        slot = cand;
        open.emplace(cand, nb);
      }
    }
  }
  return dist;
}

std::int64_t path_cost_units(const GridGraph& g, const Curve& c, const CostMap& cm) {
  std::int64_t total = 0;
  for (std::size_t i = 1; i < c.cells.size(); ++i) {
    total += cm.entry_weight(checked_index(g, c.cells[i]));
  }
  return total;
}

double path_cost(const GridGraph& g, const Curve& c, const CostMap& cm) {
  return static_cast<double>(path_cost_units(g, c, cm)) /
         static_cast<double>(CostMap::kUnitsPerStep);
}

Assignment hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  double scale = 1.0;
  for (const auto& row : cost) {
    if (row.size() != cost.size()) {
      throw Error(ErrorCode::kNonSquare, "cost matrix must be square");
    }
    for (double x : row) {
      if (!std::isfinite(x)) throw Error(ErrorCode::kNonFiniteEntry, "cost entries must be finite");
      if (x < 0) throw Error(ErrorCode::kNegativeEntry, "cost entries must be non-negative");
      scale = std::max(scale, x);
      flat.push_back(x);
    }
  }
  Assignment out;
  if (n == 0) return out;

  std::vector<double> u, v;
  std::vector<int> col_of = solve_assignment(flat, n, u, v);
  const double eps = 1e-9 * scale * n;
  std::vector<std::vector<char>> tight(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double reduced = flat[static_cast<std::size_t>(i) * n + j] - u[static_cast<std::size_t>(i) + 1] -
                             v[static_cast<std::size_t>(j) + 1];
      tight[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::abs(reduced) <= eps;
    }
  }
  out.target_of = lexicographic_optimum(tight, std::move(col_of));
  for (int i = 0; i < n; ++i) {
    out.total_cost += cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(out.target_of[static_cast<std::size_t>(i)])];
  }
  return out;
}

std::vector<int> hungarian_exact(const std::vector<std::int64_t>& cost, int n) {
  if (n < 0 || cost.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kNonSquare, "cost matrix must be n x n");
  }
  for (std::int64_t x : cost) {
    if (x < 0) throw Error(ErrorCode::kNegativeEntry, "cost entries must be non-negative");
  }
  if (n == 0) return {};
  std::vector<std::int64_t> u, v;
  std::vector<int> col_of = solve_assignment(cost, n, u, v);
  std::vector<std::vector<char>> tight(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      tight[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          cost[static_cast<std::size_t>(i) * n + j] == u[static_cast<std::size_t>(i) + 1] + v[static_cast<std::size_t>(j) + 1];
    }
  }
  return lexicographic_optimum(tight, std::move(col_of));
}

}  // namespace mrsearch
