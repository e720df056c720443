#include "mrsearch/sfc.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "mrsearch/error.hpp"

namespace mrsearch {
namespace {

int sgn(int v) { return (v > 0) - (v < 0); }

// Floor division; the curve construction relies on rounding toward -inf for
// negative axis vectors.
int floor_half(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

// Recursive generalized Hilbert construction. (ax, ay) spans the major axis
// and (bx, by) the minor axis of the current block, whose corner is (x, y).
void generate(std::vector<Cell>& out, int x, int y, int ax, int ay, int bx, int by) {
  const int w = std::abs(ax + ay);
  const int h = std::abs(bx + by);
  const int dax = sgn(ax), day = sgn(ay);
  const int dbx = sgn(bx), dby = sgn(by);

  if (h == 1) {
    for (int i = 0; i < w; ++i, x += dax, y += day) out.push_back({x, y});
    return;
  }
  if (w == 1) {
    for (int i = 0; i < h; ++i, x += dbx, y += dby) out.push_back({x, y});
    return;
  }

  int ax2 = floor_half(ax), ay2 = floor_half(ay);
  int bx2 = floor_half(bx), by2 = floor_half(by);
  const int w2 = std::abs(ax2 + ay2);
  const int h2 = std::abs(bx2 + by2);

  if (2 * w > 3 * h) {
    // Long block: split along the major axis only, preferring even halves.
    if ((w2 % 2) != 0 && w > 2) {
      ax2 += dax;
      ay2 += day;
    }
    generate(out, x, y, ax2, ay2, bx, by);
    generate(out, x + ax2, y + ay2, ax - ax2, ay - ay2, bx, by);
    return;
  }

  if ((h2 % 2) != 0 && h > 2) {
    bx2 += dbx;
    by2 += dby;
  }
  // Up, across, down.
  generate(out, x, y, bx2, by2, ax2, ay2);
  generate(out, x + bx2, y + by2, ax, ay, bx - bx2, by - by2);
  generate(out, x + (ax - dax) + (bx2 - dbx), y + (ay - day) + (by2 - dby), -bx2, -by2,
           -(ax - ax2), -(ay - ay2));
}

}  // namespace

Curve gilbert_curve(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "curve dimensions must be >= 1");
  }
  Curve c;
  c.cells.reserve(static_cast<std::size_t>(width) * height);
  if (width >= height) {
    generate(c.cells, 0, 0, width, 0, 0, height);
  } else {
    generate(c.cells, 0, 0, 0, height, width, 0);
  }
  return c;
}

Curve repair_curve(const Curve& c, const GridGraph& g) {
  Curve out;
  out.cyclic = c.cyclic;
  out.cells.reserve(c.cells.size() + c.cells.size() / 8);
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    const Cell cur = c.cells[i];
    if (i > 0) {
      const Cell prev = c.cells[i - 1];
      const int dc = cur.col - prev.col, dr = cur.row - prev.row;
      if (std::abs(dc) == 1 && std::abs(dr) == 1) {
        const Cell horizontal{cur.col, prev.row};
        const Cell vertical{prev.col, cur.row};
        if (g.contains(horizontal)) {
          out.cells.push_back(horizontal);
        } else if (g.contains(vertical)) {
          out.cells.push_back(vertical);
        } else {
          throw Error(ErrorCode::kCellOutsideGraph, "no detour cell for diagonal step");
        }
      } else if (std::abs(dc) + std::abs(dr) > 1) {
        throw Error(ErrorCode::kInvalidArgument, "curve step longer than one cell");
      }
    }
    out.cells.push_back(cur);
  }
  return out;
}

Curve place_curve(const Rectangle& rect, const Curve& c) {
  int max_col = -1, max_row = -1, min_col = 0, min_row = 0;
  for (const Cell& cell : c.cells) {
    max_col = std::max(max_col, cell.col);
    max_row = std::max(max_row, cell.row);
    min_col = std::min(min_col, cell.col);
    min_row = std::min(min_row, cell.row);
  }
  if (min_col < 0 || min_row < 0 || max_col + 1 != rect.width || max_row + 1 != rect.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "curve spans " + std::to_string(max_col + 1) + "x" + std::to_string(max_row + 1) +
                    ", rectangle is " + std::to_string(rect.width) + "x" +
                    std::to_string(rect.height));
  }
  Curve out = c;
  for (Cell& cell : out.cells) {
    cell.col += rect.anchor.col;
    cell.row += rect.anchor.row;
  }
  return out;
}

std::vector<std::size_t> assign_segments(const Curve& c, int count) {
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one robot");
  if (static_cast<std::size_t>(count) > c.cells.size()) {
    throw Error(ErrorCode::kTooManyRobots, std::to_string(count) + " robots for a curve of " +
                                               std::to_string(c.cells.size()) + " cells");
  }
  std::vector<std::size_t> starts(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < starts.size(); ++i) starts[i] = i * c.cells.size() / starts.size();
  return starts;
}

PatrolCursor patrol_step(PatrolCursor cursor, std::size_t length) {
  if (length <= 1) return {0, cursor.direction};
  const bool past_end = cursor.direction > 0 ? cursor.offset + 1 >= length : cursor.offset == 0;
  if (past_end) cursor.direction = -cursor.direction;
  cursor.offset = cursor.direction > 0 ? cursor.offset + 1 : cursor.offset - 1;
  return cursor;
}

std::size_t patrol_period(std::size_t length) { return length <= 1 ? 1 : 2 * (length - 1); }

}  // namespace mrsearch
