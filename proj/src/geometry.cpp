#include "mrsearch/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <queue>
#include <string>

#include "mrsearch/error.hpp"

namespace mrsearch {
namespace {

bool is_horizontal(Point a, Point b) { return a.y == b.y; }

std::string point_str(Point p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

std::int64_t twice_signed_area(const std::vector<Point>& v) {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % v.size()];
    acc += static_cast<std::int64_t>(a.x) * b.y - static_cast<std::int64_t>(b.x) * a.y;
  }
  return acc;
}

// Closed axis-parallel segments intersect exactly when their boxes do.
bool segments_touch(Point a0, Point a1, Point b0, Point b1) {
  const int ax_lo = std::min(a0.x, a1.x), ax_hi = std::max(a0.x, a1.x);
  const int ay_lo = std::min(a0.y, a1.y), ay_hi = std::max(a0.y, a1.y);
  const int bx_lo = std::min(b0.x, b1.x), bx_hi = std::max(b0.x, b1.x);
  const int by_lo = std::min(b0.y, b1.y), by_hi = std::max(b0.y, b1.y);
  return ax_lo <= bx_hi && bx_lo <= ax_hi && ay_lo <= by_hi && by_lo <= ay_hi;
}

}  // namespace

OrthoPolygon::OrthoPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  for (const Point& p : vertices_) {
    width_ = std::max(width_, p.x);
    height_ = std::max(height_, p.y);
  }
}

std::int64_t OrthoPolygon::area() const { return twice_signed_area(vertices_) / 2; }

int OrthoPolygon::shortest_edge() const {
  int best = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point a = vertices_[i];
    const Point b = vertices_[(i + 1) % vertices_.size()];
    const int len = std::abs(a.x - b.x) + std::abs(a.y - b.y);
    if (i == 0 || len < best) best = len;
  }
  return best;
}

OrthoPolygon OrthoPolygon::scaled(int factor) const {
  if (factor < 1) throw Error(ErrorCode::kInvalidArgument, "scale factor must be >= 1");
  std::vector<Point> v = vertices_;
  for (Point& p : v) {
    p.x *= factor;
    p.y *= factor;
  }
  return OrthoPolygon(std::move(v));
}

OrthoPolygon validate_polygon(std::vector<Point> v) {
  const std::size_t n = v.size();
  if (n < 2) throw Error(ErrorCode::kTooFewVertices, "need at least 4 vertices");

  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == v[(i + 1) % n]) {
      throw Error(ErrorCode::kDegenerateEdge, "zero-length edge at " + point_str(v[i]));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[i], b = v[(i + 1) % n];
    if (a.x != b.x && a.y != b.y) {
      throw Error(ErrorCode::kNonOrthogonalEdge,
                  "edge " + point_str(a) + "-" + point_str(b) + " is not axis-parallel");
    }
  }
  if (n % 2 != 0) {
    throw Error(ErrorCode::kOddVertexCount, std::to_string(n) + " vertices");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool h0 = is_horizontal(v[i], v[(i + 1) % n]);
    const bool h1 = is_horizontal(v[(i + 1) % n], v[(i + 2) % n]);
    if (h0 == h1) {
      throw Error(ErrorCode::kNonOrthogonalEdge,
                  "edges meeting at " + point_str(v[(i + 1) % n]) + " do not alternate");
    }
  }
  if (n < 4) throw Error(ErrorCode::kTooFewVertices, "need at least 4 vertices");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing vertex
      if (segments_touch(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
        throw Error(ErrorCode::kSelfIntersection,
                    "edges at " + point_str(v[i]) + " and " + point_str(v[j]) + " meet");
      }
    }
  }

  if (twice_signed_area(v) < 0) std::reverse(v.begin(), v.end());
  int min_x = v[0].x, min_y = v[0].y;
  for (const Point& p : v) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
  }
  for (Point& p : v) {
    p.x -= min_x;
    p.y -= min_y;
  }
  return OrthoPolygon(std::move(v));
}

GridGraph::GridGraph(int cols, int rows, const std::vector<std::uint8_t>& mask)
    : cols_(cols), rows_(rows) {
  if (cols < 0 || rows < 0 ||
      mask.size() != static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows)) {
    throw Error(ErrorCode::kInvalidArgument, "mask size does not match grid window");
  }
  index_.assign(mask.size(), kNoCell);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t w = static_cast<std::size_t>(r) * cols + c;
      if (mask[w]) {
        index_[w] = static_cast<int>(cells_.size());
        cells_.push_back(Cell{c, r});
      }
    }
  }
  adjacency_.resize(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    for (std::size_t d = 0; d < 4; ++d) {
      const Cell nb{cells_[i].col + kNeighborOffsets[d].col, cells_[i].row + kNeighborOffsets[d].row};
      adjacency_[i][d] = index_of(nb);
    }
  }
}

GridGraph GridGraph::from_cells(const std::vector<Cell>& cells) {
  int cols = 0, rows = 0;
  for (const Cell& c : cells) {
    if (c.col < 0 || c.row < 0) {
      throw Error(ErrorCode::kInvalidArgument, "cells must have non-negative coordinates");
    }
    cols = std::max(cols, c.col + 1);
    rows = std::max(rows, c.row + 1);
  }
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(cols) * rows, 0);
  for (const Cell& c : cells) mask[static_cast<std::size_t>(c.row) * cols + c.col] = 1;
  return GridGraph(cols, rows, mask);
}

GridGraph GridGraph::full(int cols, int rows) {
  return GridGraph(cols, rows, std::vector<std::uint8_t>(static_cast<std::size_t>(cols) * rows, 1));
}

int GridGraph::index_of(Cell c) const noexcept {
  if (c.col < 0 || c.row < 0 || c.col >= cols_ || c.row >= rows_) return kNoCell;
  return index_[static_cast<std::size_t>(c.row) * cols_ + c.col];
}

std::vector<Cell> GridGraph::neighbors(Cell c) const {
  const int idx = index_of(c);
  if (idx == kNoCell) {
    throw Error(ErrorCode::kCellOutsideGraph,
                "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")");
  }
  std::vector<Cell> out;
  for (int nb : adjacency_[static_cast<std::size_t>(idx)]) {
    if (nb != kNoCell) out.push_back(cells_[static_cast<std::size_t>(nb)]);
  }
  return out;
}

bool GridGraph::is_connected() const {
  if (cells_.empty()) return true;
  std::vector<char> seen(cells_.size(), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const int cur = frontier.front();
    frontier.pop();
    for (int nb : adjacency_[static_cast<std::size_t>(cur)]) {
      if (nb != kNoCell && !seen[static_cast<std::size_t>(nb)]) {
        seen[static_cast<std::size_t>(nb)] = 1;
        ++reached;
        frontier.push(nb);
      }
    }
  }
  return reached == cells_.size();
}

GridGraph rasterize(const OrthoPolygon& poly) {
  const int cols = poly.width();
  const int rows = poly.height();
  const auto& v = poly.vertices();
  const std::size_t n = v.size();

  // Vertical edges crossing the horizontal line through each row's centers,
  // and horizontal edges crossing the vertical line through each column's.
  // Centers sit on half-integers, so an edge spanning [lo, hi] crosses the
  // line of row r iff lo <= r < hi; no vertex can lie on a ray.
  std::vector<std::vector<int>> row_crossings(static_cast<std::size_t>(rows));
  std::vector<std::vector<int>> col_crossings(static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[i], b = v[(i + 1) % n];
    if (a.x == b.x) {
      for (int r = std::min(a.y, b.y); r < std::max(a.y, b.y); ++r) {
        row_crossings[static_cast<std::size_t>(r)].push_back(a.x);
      }
    } else {
      for (int c = std::min(a.x, b.x); c < std::max(a.x, b.x); ++c) {
        col_crossings[static_cast<std::size_t>(c)].push_back(a.y);
      }
    }
  }
  for (auto& xs : row_crossings) std::sort(xs.begin(), xs.end());
  for (auto& ys : col_crossings) std::sort(ys.begin(), ys.end());

  // Number of crossings strictly below / above the half-integer center `k + 0.5`.
  auto split = [](const std::vector<int>& sorted, int k) {
    const auto below = std::upper_bound(sorted.begin(), sorted.end(), k) - sorted.begin();
    return std::pair<std::size_t, std::size_t>(static_cast<std::size_t>(below),
                                               sorted.size() - static_cast<std::size_t>(below));
  };

  std::vector<std::uint8_t> mask(static_cast<std::size_t>(cols) * rows, 0);
  bool any = false;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const auto [west, east] = split(row_crossings[static_cast<std::size_t>(r)], c);
      const auto [south, north] = split(col_crossings[static_cast<std::size_t>(c)], r);
      if (west % 2 == 1 && east % 2 == 1 && south % 2 == 1 && north % 2 == 1) {
        mask[static_cast<std::size_t>(r) * cols + c] = 1;
        any = true;
      }
    }
  }
  if (!any) throw Error(ErrorCode::kEmptyInterior, "no cell lies inside the polygon");
  return GridGraph(cols, rows, mask);
}

std::optional<OrthoPolygon> trace_outline(const GridGraph& g) {
  if (g.empty()) return std::nullopt;

  // Unit boundary edges oriented with the region on their left.
  std::map<Point, Point> next;
  std::size_t edge_count = 0;
  auto add = [&](Point from, Point to) {
    ++edge_count;
    return next.emplace(from, to).second;
  };
  for (const Cell& c : g.cells()) {
    const int x = c.col, y = c.row;
    bool ok = true;
    if (!g.contains({x, y - 1})) ok &= add({x, y}, {x + 1, y});
    if (!g.contains({x + 1, y})) ok &= add({x + 1, y}, {x + 1, y + 1});
    if (!g.contains({x, y + 1})) ok &= add({x + 1, y + 1}, {x, y + 1});
    if (!g.contains({x - 1, y})) ok &= add({x, y + 1}, {x, y});
    if (!ok) return std::nullopt;  // two boundary edges leave one point: pinch
  }

  const Point start = next.begin()->first;
  std::vector<Point> corners;
  Point cur = start;
  std::size_t walked = 0;
  do {
    const Point to = next.at(cur);
    ++walked;
    const Point after = next.at(to);
    const bool turn = (to.x - cur.x) != (after.x - to.x) || (to.y - cur.y) != (after.y - to.y);
    if (turn) corners.push_back(to);
    cur = to;
  } while (cur != start && walked <= edge_count);
  if (walked != edge_count) return std::nullopt;  // hole or second component

  try {
    return validate_polygon(std::move(corners));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace mrsearch
