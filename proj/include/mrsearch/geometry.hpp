#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace mrsearch {

// Lattice point in cell units (one unit = one cell side).
struct Point {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Point&, const Point&) = default;
};

// Unit cell of the lattice. A robot standing on a cell sits at its center.
struct Cell {
  int col = 0;
  int row = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Simple axis-parallel polygon with integer vertices, counter-clockwise and
// translated so that its bounding box starts at the origin. Instances can
// only be obtained through validate_polygon(), so every OrthoPolygon in the
// program is known to be valid.
class OrthoPolygon {
 public:
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }

  // Bounding box extent; the lower-left corner is always (0, 0).
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  // Lattice area by the shoelace formula.
  std::int64_t area() const;

  // Length of the shortest boundary edge.
  int shortest_edge() const;

  OrthoPolygon scaled(int factor) const;

  friend bool operator==(const OrthoPolygon&, const OrthoPolygon&) = default;

 private:
  friend OrthoPolygon validate_polygon(std::vector<Point> vertices);
  explicit OrthoPolygon(std::vector<Point> vertices);

  std::vector<Point> vertices_;
  int width_ = 0;
  int height_ = 0;
};

// Checks orthogonality, simplicity and vertex parity, then normalizes the
// polygon (translate to the origin, counter-clockwise order). Throws Error.
OrthoPolygon validate_polygon(std::vector<Point> vertices);

enum class Direction { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

inline constexpr std::array<Cell, 4> kNeighborOffsets = {
    Cell{0, 1},   // N
    Cell{1, 0},   // E
    Cell{0, -1},  // S
    Cell{-1, 0},  // W
};

// Cells of a polygon with implicit 4-adjacency. Cells are numbered densely in
// row-major order (row first, then column); the simulation works on those
// dense indices.
class GridGraph {
 public:
  static constexpr int kNoCell = -1;

  GridGraph() = default;

  // Builds a graph over a cols x rows window from a row-major membership mask.
  GridGraph(int cols, int rows, const std::vector<std::uint8_t>& mask);

  static GridGraph from_cells(const std::vector<Cell>& cells);
  static GridGraph full(int cols, int rows);

  int cols() const noexcept { return cols_; }
  int rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }

  bool contains(Cell c) const noexcept { return index_of(c) != kNoCell; }
  int index_of(Cell c) const noexcept;
  Cell cell(int index) const { return cells_.at(static_cast<std::size_t>(index)); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  // Member neighbors in N, E, S, W order. Throws CellOutsideGraph.
  std::vector<Cell> neighbors(Cell c) const;

  // Dense neighbor indices in N, E, S, W order, kNoCell where absent.
  const std::array<int, 4>& neighbor_indices(int index) const {
    return adjacency_[static_cast<std::size_t>(index)];
  }

  bool is_connected() const;

 private:
  int cols_ = 0;
  int rows_ = 0;
  std::vector<int> index_;  // cols_ * rows_ window, kNoCell outside
  std::vector<Cell> cells_;
  std::vector<std::array<int, 4>> adjacency_;
};

// Keeps the cells whose centers pass the odd-crossing test for all four axis
// rays. Throws EmptyInterior if no cell qualifies.
GridGraph rasterize(const OrthoPolygon& poly);

// Outline of a cell set as an orthogonal polygon (translated to the origin).
// Returns nullopt when the set is not a single simply connected region with a
// simple boundary (holes, several components, or cells touching only at a
// corner).
std::optional<OrthoPolygon> trace_outline(const GridGraph& g);

inline int manhattan(Cell a, Cell b) {
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  return dc + dr;
}

}  // namespace mrsearch
