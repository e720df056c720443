#pragma once

#include <cstddef>
#include <vector>

#include "mrsearch/decomposition.hpp"
#include "mrsearch/geometry.hpp"

namespace mrsearch {

// Ordered cell sequence: a patrol curve or a planned path.
struct Curve {
  std::vector<Cell> cells;
  bool cyclic = false;

  std::size_t size() const { return cells.size(); }
  friend bool operator==(const Curve&, const Curve&) = default;
};

// Generalized Hilbert curve over [0, width) x [0, height), starting at (0, 0).
// Every cell is visited once; odd x odd splits can leave single diagonal steps.
Curve gilbert_curve(int width, int height);

// Replaces each diagonal step with two unit steps, horizontal leg first when
// that cell is in `g`, otherwise vertical first.
Curve repair_curve(const Curve& c, const GridGraph& g);

// Translates a curve spanning exactly rect's dimensions to rect's anchor.
// Throws DimensionMismatch.
Curve place_curve(const Rectangle& rect, const Curve& c);

// Start offsets floor(i * |c| / count) for `count` robots. Throws
// TooManyRobots.
std::vector<std::size_t> assign_segments(const Curve& c, int count);

// Position of a robot walking a segment back and forth.
struct PatrolCursor {
  std::size_t offset = 0;
  int direction = 1;

  friend bool operator==(const PatrolCursor&, const PatrolCursor&) = default;
};

// One patrol step on a segment of `length` cells; the direction flips at
// either end and a single-cell segment stays put.
PatrolCursor patrol_step(PatrolCursor cursor, std::size_t length);

// Steps for a back-and-forth patrol of `length` cells to return to its start.
std::size_t patrol_period(std::size_t length);

}  // namespace mrsearch
