#include "mrsearch/polygen.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "mrsearch/error.hpp"

namespace mrsearch {
namespace {

constexpr int kMaxCutRetries = 10000;

int sign(int v) { return (v > 0) - (v < 0); }

// Renumbers the distinct x and y coordinates to consecutive integers. Order
// (and therefore orthogonality and simplicity) is preserved.
OrthoPolygon compress(const OrthoPolygon& poly) {
  std::vector<int> xs, ys;
  for (const Point& p : poly.vertices()) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::vector<Point> out;
  out.reserve(poly.vertex_count());
  for (const Point& p : poly.vertices()) {
    out.push_back({static_cast<int>(std::lower_bound(xs.begin(), xs.end(), p.x) - xs.begin()),
                   static_cast<int>(std::lower_bound(ys.begin(), ys.end(), p.y) - ys.begin())});
  }
  return validate_polygon(std::move(out));
}

// One inflate-cut attempt. Inflating doubles the lattice so the chosen cell
// becomes a 2x2 block whose center lies on fresh (odd) grid lines; the cut
// removes the rectangle spanned by that center and a polygon vertex in a
// random quadrant. Only cuts that keep the polygon simple and add exactly two
// vertices are accepted.
std::optional<OrthoPolygon> try_inflate_cut(const OrthoPolygon& poly, std::mt19937_64& rng) {
  const GridGraph g = rasterize(poly);
  std::vector<int> boundary_cells;
  for (int i = 0; i < static_cast<int>(g.size()); ++i) {
    const auto& nb = g.neighbor_indices(i);
    if (std::find(nb.begin(), nb.end(), GridGraph::kNoCell) != nb.end()) boundary_cells.push_back(i);
  }
  std::uniform_int_distribution<std::size_t> pick_cell(0, boundary_cells.size() - 1);
  const Cell chosen = g.cell(boundary_cells[pick_cell(rng)]);
  std::uniform_int_distribution<int> pick_quadrant(0, 3);
  const int quadrant = pick_quadrant(rng);
  const int dx = (quadrant & 1) ? 1 : -1;
  const int dy = (quadrant & 2) ? 1 : -1;

  const int cols = 2 * g.cols();
  const int rows = 2 * g.rows();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(cols) * rows, 0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      mask[static_cast<std::size_t>(r) * cols + c] = g.contains({c / 2, r / 2}) ? 1 : 0;
    }
  }
  const Point center{2 * chosen.col + 1, 2 * chosen.row + 1};

  struct Span {
    int x0, x1, y0, y1;
  };
  std::vector<Span> candidates;
  for (const Point& v : poly.vertices()) {
    const Point w{2 * v.x, 2 * v.y};
    if (sign(w.x - center.x) != dx || sign(w.y - center.y) != dy) continue;
    const Span s{std::min(w.x, center.x), std::max(w.x, center.x), std::min(w.y, center.y),
                 std::max(w.y, center.y)};
    bool inside = true;
    for (int r = s.y0; r < s.y1 && inside; ++r) {
      for (int c = s.x0; c < s.x1 && inside; ++c) {
        inside = mask[static_cast<std::size_t>(r) * cols + c] != 0;
      }
    }
    if (inside) candidates.push_back(s);
  }
  if (candidates.empty()) return std::nullopt;

  std::uniform_int_distribution<std::size_t> pick_cut(0, candidates.size() - 1);
  const Span cut = candidates[pick_cut(rng)];
  for (int r = cut.y0; r < cut.y1; ++r) {
    for (int c = cut.x0; c < cut.x1; ++c) mask[static_cast<std::size_t>(r) * cols + c] = 0;
  }
  const auto outline = trace_outline(GridGraph(cols, rows, mask));
  if (!outline || outline->vertex_count() != poly.vertex_count() + 2) return std::nullopt;
  return compress(*outline);
}

bool is_convex_turn(Point prev, Point at, Point next) {
  const std::int64_t cross = static_cast<std::int64_t>(at.x - prev.x) * (next.y - at.y) -
                             static_cast<std::int64_t>(at.y - prev.y) * (next.x - at.x);
  return cross > 0;
}

int edge_length(Point a, Point b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

}  // namespace

OrthoPolygon inflate_cut(int target_vertices, std::uint64_t seed) {
  if (target_vertices % 2 != 0) {
    throw Error(ErrorCode::kOddTargetVertices,
                std::to_string(target_vertices) + " vertices requested");
  }
  if (target_vertices < 4) {
    throw Error(ErrorCode::kInvalidArgument, "an orthogonal polygon has at least 4 vertices");
  }
  std::mt19937_64 rng(seed);
  OrthoPolygon poly = validate_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const int rounds = (target_vertices - 4) / 2;
  for (int round = 0; round < rounds; ++round) {
    std::optional<OrthoPolygon> next;
    for (int attempt = 0; attempt < kMaxCutRetries && !next; ++attempt) {
      next = try_inflate_cut(poly, rng);
    }
    if (!next) {
      throw Error(ErrorCode::kIterationBudgetExceeded,
                  "no valid cut after " + std::to_string(kMaxCutRetries) + " attempts");
    }
    poly = std::move(*next);
  }
  return poly;
}

void ThreePartitionInstance::validate() const {
  if (q < 1) throw Error(ErrorCode::kInstanceInvalid, "q must be positive");
  if (target < 1) throw Error(ErrorCode::kInstanceInvalid, "T must be positive");
  if (values.size() != static_cast<std::size_t>(3 * q)) {
    throw Error(ErrorCode::kInstanceInvalid, "expected 3q = " + std::to_string(3 * q) +
                                                 " values, got " + std::to_string(values.size()));
  }
  std::int64_t sum = 0;
  for (int v : values) {
    if (v < 1) throw Error(ErrorCode::kInstanceInvalid, "values must be positive");
    sum += v;
  }
  if (sum != static_cast<std::int64_t>(q) * target) {
    throw Error(ErrorCode::kInstanceInvalid,
                "sum " + std::to_string(sum) + " != qT = " + std::to_string(q * target));
  }
}

bool ThreePartitionInstance::strong_bounds_hold() const {
  // T/4 < n < T/2 in integers: 4n > T and 2n < T.
  return std::all_of(values.begin(), values.end(),
                     [this](int v) { return 4 * v > target && 2 * v < target; });
}

std::int64_t CombSpec::spike_area() const {
  std::int64_t depth = 0;
  for (int len : spike_lengths) depth += len;
  return depth * spike_width;
}

OrthoPolygon make_comb(const CombSpec& spec) {
  if (spec.base_height < 1 || spec.spike_width < 1 || spec.spike_gap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "comb base height, spike width and gap must be >= 1");
  }
  for (int len : spec.spike_lengths) {
    if (len < 1) throw Error(ErrorCode::kInvalidArgument, "spike lengths must be >= 1");
  }
  const int w = spec.base_width();
  const int h = spec.base_height;
  std::vector<Point> v{{0, 0}, {w, 0}, {w, h}};
  for (int i = static_cast<int>(spec.spike_lengths.size()) - 1; i >= 0; --i) {
    const int x0 = spec.spike_gap + i * (spec.spike_width + spec.spike_gap);
    const int x1 = x0 + spec.spike_width;
    const int top = h + spec.spike_lengths[static_cast<std::size_t>(i)];
    v.insert(v.end(), {{x1, h}, {x1, top}, {x0, top}, {x0, h}});
  }
  v.push_back({0, h});
  return validate_polygon(std::move(v));
}

CombSpec comb_spec_for(const ThreePartitionInstance& inst, int spike_width, int base_height) {
  inst.validate();
  if (spike_width < 1 || base_height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "spike width and base height must be >= 1");
  }
  return CombSpec{base_height, inst.values, spike_width, 1};
}

OrthoPolygon build_comb(const ThreePartitionInstance& inst, int spike_width, int base_height) {
  return make_comb(comb_spec_for(inst, spike_width, base_height));
}

ScheduleReport verify_partition_schedule(const ThreePartitionInstance& inst,
                                         const std::vector<Triple>& partition) {
  inst.validate();
  for (const Triple& t : partition) {
    if (t.size() != 3) {
      throw Error(ErrorCode::kTripleSizeError,
                  "group of " + std::to_string(t.size()) + " indices");
    }
  }
  if (partition.size() != static_cast<std::size_t>(inst.q)) {
    throw Error(ErrorCode::kNotAPartition, "expected " + std::to_string(inst.q) + " triples, got " +
                                               std::to_string(partition.size()));
  }
  std::vector<char> used(inst.values.size(), 0);
  for (const Triple& t : partition) {
    for (int idx : t) {
      if (idx < 0 || idx >= static_cast<int>(inst.values.size())) {
        throw Error(ErrorCode::kNotAPartition, "index " + std::to_string(idx) + " out of range");
      }
      if (used[static_cast<std::size_t>(idx)]) {
        throw Error(ErrorCode::kNotAPartition, "index " + std::to_string(idx) + " repeated");
      }
      used[static_cast<std::size_t>(idx)] = 1;
    }
  }

  ScheduleReport report;
  int worst = 0;
  report.balanced = true;
  for (const Triple& t : partition) {
    int sum = 0;
    for (int idx : t) sum += inst.values[static_cast<std::size_t>(idx)];
    report.triple_sums.push_back(sum);
    worst = std::max(worst, sum);
    report.balanced = report.balanced && sum == inst.target;
  }
  report.makespan = static_cast<std::int64_t>(inst.q) * worst;

  // Sweep simulation on the unit-width gadget. Spike depths are read off the
  // rasterized polygon, not from the instance.
  const CombSpec spec = comb_spec_for(inst, 1, 1);
  const GridGraph g = rasterize(make_comb(spec));
  const int base_row = spec.base_height - 1;
  std::int64_t worst_clearing = 0;
  for (const Triple& t : partition) {
    std::vector<int> order(t.begin(), t.end());
    std::sort(order.begin(), order.end());
    auto spike_col = [&](int idx) { return spec.spike_gap + idx * (spec.spike_width + spec.spike_gap); };
    Cell pos{spike_col(order.front()), base_row};
    std::set<Cell> cleared;
    std::int64_t clearing = 0, overhead = 0;
    auto move_to = [&](Cell next) {
      if (!g.contains(next) || manhattan(pos, next) != 1) {
        throw Error(ErrorCode::kInvalidArgument, "schedule walk left the comb");
      }
      pos = next;
      if (pos.row > base_row && cleared.insert(pos).second) {
        ++clearing;
      } else {
        ++overhead;
      }
    };
    for (int idx : order) {
      const int col = spike_col(idx);
      while (pos.col != col) move_to({pos.col + (col > pos.col ? 1 : -1), base_row});
      while (g.contains({col, pos.row + 1})) move_to({col, pos.row + 1});
      while (pos.row > base_row) move_to({col, pos.row - 1});
    }
    report.simulated_clearing.push_back(clearing);
    report.simulated_overhead.push_back(overhead);
    worst_clearing = std::max(worst_clearing, clearing);
    report.max_overhead = std::max(report.max_overhead, overhead);
  }
  report.simulated_makespan = static_cast<std::int64_t>(inst.q) * worst_clearing;
  return report;
}

int count_spikes(const OrthoPolygon& poly) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  const GridGraph g = rasterize(poly);
  auto at = [&](std::size_t i) { return v[i % n]; };
  auto convex = [&](std::size_t i) { return is_convex_turn(at(i + n - 1), at(i), at(i + 1)); };

  int spikes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // Tip edge v[i] -> v[i+1]; side edges end at v[i-1] and v[i+2].
    if (!convex(i) || !convex(i + 1)) continue;
    if (convex(i + n - 1) || convex(i + 2)) continue;
    const Point a = at(i), b = at(i + 1);
    const int depth = std::min(edge_length(at(i + n - 1), a), edge_length(b, at(i + 2)));
    const int ux = sign(b.x - a.x), uy = sign(b.y - a.y);
    const Point inward{-uy, ux};  // interior lies to the left of a CCW edge
    const Point far_a{a.x + depth * inward.x, a.y + depth * inward.y};
    const int x0 = std::min({a.x, b.x, far_a.x}), x1 = std::max({a.x, b.x, far_a.x});
    const int y0 = std::min({a.y, b.y, far_a.y}), y1 = std::max({a.y, b.y, far_a.y});
    bool inside = true;
    for (int r = y0; r < y1 && inside; ++r) {
      for (int c = x0; c < x1 && inside; ++c) inside = g.contains({c, r});
    }
    if (inside) ++spikes;
  }
  return spikes;
}

}  // namespace mrsearch
