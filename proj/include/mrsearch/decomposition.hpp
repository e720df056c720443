#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mrsearch/geometry.hpp"

namespace mrsearch {

struct Rectangle {
  Cell anchor;  // lowest column and row
  int width = 1;
  int height = 1;

  int area() const { return width * height; }
  bool contains(Cell c) const {
    return c.col >= anchor.col && c.col < anchor.col + width && c.row >= anchor.row &&
           c.row < anchor.row + height;
  }
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

// Maximal shared edge between rectangles `first` < `second`.
struct Junction {
  int first = 0;
  int second = 0;
  bool vertical = false;  // true: the segment lies on the line x = `line`
  int line = 0;
  int begin = 0;          // extent along the line, half-open
  int end = 0;
  std::vector<std::pair<Cell, Cell>> straddle;  // (cell in first, cell in second)
};

struct Rectangulation {
  std::vector<Rectangle> rects;
  std::vector<Junction> junctions;
};

// Greedy random rectangulation: repeatedly pick a uniformly random uncovered
// cell and cover the largest rectangle of uncovered cells containing it
// (ties: wider first, then lowest anchor in row-major order).
Rectangulation rectangulate(const GridGraph& g, std::uint64_t seed);

std::vector<Junction> junctions(const std::vector<Rectangle>& rects);

// Rectangle index per dense cell index of g.
std::vector<int> owner_map(const GridGraph& g, const std::vector<Rectangle>& rects);

// Largest-remainder apportionment of `robots` over rectangle areas with a
// floor of one robot per rectangle. Throws TooFewRobots.
std::vector<int> allocate_robots(const std::vector<Rectangle>& rects, int robots);
std::vector<int> allocate_by_area(const std::vector<std::int64_t>& areas, int robots);

}  // namespace mrsearch
