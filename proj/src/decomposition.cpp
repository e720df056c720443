#include "mrsearch/decomposition.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <tuple>

#include "mrsearch/error.hpp"

namespace mrsearch {
namespace {

class FreeMask {
 public:
  explicit FreeMask(const GridGraph& g)
      : cols_(g.cols()), rows_(g.rows()), free_(static_cast<std::size_t>(cols_) * rows_, 0) {
    for (const Cell& c : g.cells()) set(c, true);
  }

  bool free(Cell c) const {
    if (c.col < 0 || c.row < 0 || c.col >= cols_ || c.row >= rows_) return false;
    return free_[static_cast<std::size_t>(c.row) * cols_ + c.col] != 0;
  }
  void set(Cell c, bool value) {
    free_[static_cast<std::size_t>(c.row) * cols_ + c.col] = value ? 1 : 0;
  }

 private:
  int cols_;
  int rows_;
  std::vector<std::uint8_t> free_;
};

// Largest rectangle of free cells containing `seed`.
Rectangle grow_rectangle(const FreeMask& mask, Cell seed) {
  auto run = [&](int row, int step) {
    int n = 0;
    while (mask.free({seed.col + step * (n + 1), row})) ++n;
    return n;
  };

  // Rows above and below the seed row, with the horizontal run through the
  // seed column on each, accumulated as running minima outward from the seed.
  struct Extent {
    int left, right;
  };
  std::vector<Extent> down{{run(seed.row, -1), run(seed.row, +1)}};
  while (mask.free({seed.col, seed.row - static_cast<int>(down.size())})) {
    const int row = seed.row - static_cast<int>(down.size());
    down.push_back({std::min(down.back().left, run(row, -1)),
                    std::min(down.back().right, run(row, +1))});
  }
  std::vector<Extent> up{down.front()};
  while (mask.free({seed.col, seed.row + static_cast<int>(up.size())})) {
    const int row = seed.row + static_cast<int>(up.size());
    up.push_back({std::min(up.back().left, run(row, -1)), std::min(up.back().right, run(row, +1))});
  }

  Rectangle best{seed, 1, 1};
  auto better = [](const Rectangle& a, const Rectangle& b) {
    return std::make_tuple(-a.area(), -a.width, a.anchor.row, a.anchor.col) <
           std::make_tuple(-b.area(), -b.width, b.anchor.row, b.anchor.col);
  };
  for (std::size_t d = 0; d < down.size(); ++d) {
    for (std::size_t u = 0; u < up.size(); ++u) {
      const int left = std::min(down[d].left, up[u].left);
      const int right = std::min(down[d].right, up[u].right);
      const Rectangle cand{{seed.col - left, seed.row - static_cast<int>(d)},
                           left + right + 1,
                           static_cast<int>(d + u) + 1};
      if (better(cand, best)) best = cand;
    }
  }
  return best;
}

}  // namespace

Rectangulation rectangulate(const GridGraph& g, std::uint64_t seed) {
  if (g.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot rectangulate an empty grid");
  std::mt19937_64 rng(seed);
  FreeMask mask(g);
  std::vector<int> pos_in_pool(g.size());
  std::vector<int> pool(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    pool[i] = static_cast<int>(i);
    pos_in_pool[i] = static_cast<int>(i);
  }
  auto take = [&](int cell_index) {
    const int slot = pos_in_pool[static_cast<std::size_t>(cell_index)];
    const int last = pool.back();
    pool[static_cast<std::size_t>(slot)] = last;
    pos_in_pool[static_cast<std::size_t>(last)] = slot;
    pool.pop_back();
  };

  Rectangulation out;
  while (!pool.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const Cell seed_cell = g.cell(pool[pick(rng)]);
    const Rectangle rect = grow_rectangle(mask, seed_cell);
    for (int r = rect.anchor.row; r < rect.anchor.row + rect.height; ++r) {
      for (int c = rect.anchor.col; c < rect.anchor.col + rect.width; ++c) {
        mask.set({c, r}, false);
        take(g.index_of({c, r}));
      }
    }
    out.rects.push_back(rect);
  }
  out.junctions = junctions(out.rects);
  return out;
}

std::vector<Junction> junctions(const std::vector<Rectangle>& rects) {
  std::vector<Junction> out;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (std::size_t j = i + 1; j < rects.size(); ++j) {
      const Rectangle& a = rects[i];
      const Rectangle& b = rects[j];
      Junction jn;
      jn.first = static_cast<int>(i);
      jn.second = static_cast<int>(j);
      const int a_right = a.anchor.col + a.width, b_right = b.anchor.col + b.width;
      const int a_top = a.anchor.row + a.height, b_top = b.anchor.row + b.height;
      if (a_right == b.anchor.col || b_right == a.anchor.col) {
        jn.vertical = true;
        jn.line = a_right == b.anchor.col ? a_right : b_right;
        jn.begin = std::max(a.anchor.row, b.anchor.row);
        jn.end = std::min(a_top, b_top);
        const bool a_left_of_b = a_right == b.anchor.col;
        for (int r = jn.begin; r < jn.end; ++r) {
          const Cell in_a{a_left_of_b ? jn.line - 1 : jn.line, r};
          const Cell in_b{a_left_of_b ? jn.line : jn.line - 1, r};
          jn.straddle.emplace_back(in_a, in_b);
        }
      } else if (a_top == b.anchor.row || b_top == a.anchor.row) {
        jn.vertical = false;
        jn.line = a_top == b.anchor.row ? a_top : b_top;
        jn.begin = std::max(a.anchor.col, b.anchor.col);
        jn.end = std::min(a_right, b_right);
        const bool a_below_b = a_top == b.anchor.row;
        for (int c = jn.begin; c < jn.end; ++c) {
          const Cell in_a{c, a_below_b ? jn.line - 1 : jn.line};
          const Cell in_b{c, a_below_b ? jn.line : jn.line - 1};
          jn.straddle.emplace_back(in_a, in_b);
        }
      }
      if (jn.begin < jn.end) out.push_back(std::move(jn));
    }
  }
  return out;
}

std::vector<int> owner_map(const GridGraph& g, const std::vector<Rectangle>& rects) {
  std::vector<int> owner(g.size(), -1);
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const Rectangle& r = rects[i];
    for (int row = r.anchor.row; row < r.anchor.row + r.height; ++row) {
      for (int col = r.anchor.col; col < r.anchor.col + r.width; ++col) {
        const int idx = g.index_of({col, row});
        if (idx == GridGraph::kNoCell) {
          throw Error(ErrorCode::kCellOutsideGraph, "rectangle covers a cell outside the grid");
        }
        owner[static_cast<std::size_t>(idx)] = static_cast<int>(i);
      }
    }
  }
  return owner;
}

std::vector<int> allocate_robots(const std::vector<Rectangle>& rects, int robots) {
  std::vector<std::int64_t> areas;
  areas.reserve(rects.size());
  for (const Rectangle& r : rects) areas.push_back(r.area());
  return allocate_by_area(areas, robots);
}

std::vector<int> allocate_by_area(const std::vector<std::int64_t>& areas, int robots) {
  const std::size_t n = areas.size();
  if (robots < static_cast<int>(n)) {
    throw Error(ErrorCode::kTooFewRobots, std::to_string(robots) + " robots for " +
                                              std::to_string(n) + " rectangles");
  }
  if (n == 0) return {};
  std::int64_t total = 0;
  for (std::int64_t a : areas) {
    if (a < 1) throw Error(ErrorCode::kInvalidArgument, "areas must be positive");
    total += a;
  }

  // Quotas robots * a_i / total are compared through the exact numerator
  // robots * a_i - count_i * total, so no rounding enters the tie-breaks.
  std::vector<int> count(n);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    count[i] = static_cast<int>(std::max<std::int64_t>(1, robots * areas[i] / total));
    assigned += count[i];
  }
  auto slack = [&](std::size_t i) { return robots * areas[i] - count[i] * total; };

  while (assigned < robots) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::make_tuple(slack(i), areas[i]) > std::make_tuple(slack(best), areas[best])) best = i;
    }
    ++count[best];
    ++assigned;
  }
  while (assigned > robots) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (count[i] <= 1) continue;
      if (best == n || std::make_tuple(slack(i), areas[i]) <= std::make_tuple(slack(best), areas[best])) {
        best = i;
      }
    }
    --count[best];
    --assigned;
  }
  return count;
}

}  // namespace mrsearch
