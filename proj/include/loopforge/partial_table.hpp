#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loopforge/cayley_table.hpp"

namespace loopforge {

/// Raised when two specified cells put the same value twice in one row or
/// column. The message names both cells.
class CellConflict : public std::invalid_argument {
public:
  CellConflict(Point r1, Point c1, Point r2, Point c2, Point value);
  std::pair<Point, Point> first() const { return first_; }
  std::pair<Point, Point> second() const { return second_; }
  Point value() const { return value_; }

private:
  std::pair<Point, Point> first_;
  std::pair<Point, Point> second_;
  Point value_;
};

/// An n x n table with some cells left undefined. Defined cells never repeat
/// a value within a row or column; set() enforces this.
class PartialCayleyTable {
public:
  static constexpr Point kUndefined = std::numeric_limits<Point>::max();

  explicit PartialCayleyTable(std::size_t order);

  std::size_t order() const { return n_; }
  Point at(Point i, Point j) const { return cells_[i * n_ + j]; }
  bool defined(Point i, Point j) const { return at(i, j) != kUndefined; }

  /// Defines cell (i,j). Overwriting a cell with a different value, or
  /// repeating a value in the row or column, throws CellConflict.
  void set(Point i, Point j, Point v);
  /// set(i,j,v) and set(j,i,v).
  void set_symmetric(Point i, Point j, Point v);
  void clear(Point i, Point j);

  bool is_symmetric() const;
  bool complete() const;
  std::size_t undefined_count() const;
  /// Undefined cells in row-major order.
  std::vector<std::pair<Point, Point>> undefined_cells() const;

  /// Throws std::logic_error if a cell is still undefined.
  CayleyTable to_table() const;
  static PartialCayleyTable from_table(const CayleyTable& t);

  const std::vector<Point>& cells() const { return cells_; }

private:
  std::size_t n_;
  std::vector<Point> cells_;
};

/// Builds a partial table from a dense cell list in which kUndefined
/// marks open cells. Duplicates are reported in row-major scan order.
PartialCayleyTable partial_from_cells(std::size_t order, const std::vector<Point>& cells);

}  // namespace loopforge
