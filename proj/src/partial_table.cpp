#include "loopforge/partial_table.hpp"

namespace loopforge {

namespace {

std::string cell_name(Point r, Point c)
{
  return "[" + std::to_string(r) + "," + std::to_string(c) + "]";
}

}  // namespace

CellConflict::CellConflict(Point r1, Point c1, Point r2, Point c2, Point value)
    : std::invalid_argument("cells " + cell_name(r1, c1) + " and " + cell_name(r2, c2) +
                            " both hold " + std::to_string(value)),
      first_(r1, c1),
      second_(r2, c2),
      value_(value)
{
}

PartialCayleyTable::PartialCayleyTable(std::size_t order)
    : n_(order), cells_(order * order, kUndefined)
{
  if (order == 0)
    throw std::invalid_argument("table order must be positive");
}

void PartialCayleyTable::set(Point i, Point j, Point v)
{
  if (i >= n_ || j >= n_ || v >= n_)
    throw std::out_of_range("cell " + cell_name(i, j) + " = " + std::to_string(v) +
                            " is outside a table of order " + std::to_string(n_));
  Point& cell = cells_[i * n_ + j];
  if (cell == v)
    return;
  if (cell != kUndefined)
    throw CellConflict(i, j, i, j, cell);
  for (Point k = 0; k < n_; ++k) {
    if (at(i, k) == v)
      throw CellConflict(i, k, i, j, v);
    if (at(k, j) == v)
      throw CellConflict(k, j, i, j, v);
  }
  cell = v;
}

void PartialCayleyTable::set_symmetric(Point i, Point j, Point v)
{
  set(i, j, v);
  set(j, i, v);
}

void PartialCayleyTable::clear(Point i, Point j)
{
  cells_.at(i * n_ + j) = kUndefined;
}

bool PartialCayleyTable::is_symmetric() const
{
  for (Point i = 0; i < n_; ++i)
    for (Point j = i + 1; j < n_; ++j)
      if (at(i, j) != at(j, i))
        return false;
  return true;
}

bool PartialCayleyTable::complete() const
{
  return undefined_count() == 0;
}

std::size_t PartialCayleyTable::undefined_count() const
{
  std::size_t count = 0;
  for (Point v : cells_)
    count += v == kUndefined;
  return count;
}

std::vector<std::pair<Point, Point>> PartialCayleyTable::undefined_cells() const
{
  std::vector<std::pair<Point, Point>> out;
  for (Point i = 0; i < n_; ++i)
    for (Point j = 0; j < n_; ++j)
      if (!defined(i, j))
        out.emplace_back(i, j);
  return out;
}

CayleyTable PartialCayleyTable::to_table() const
{
  if (!complete())
    throw std::logic_error("partial table still has undefined cells");
  return CayleyTable(n_, cells_);
}

PartialCayleyTable PartialCayleyTable::from_table(const CayleyTable& t)
{
  PartialCayleyTable pt(t.order());
  pt.cells_.assign(t.cells().begin(), t.cells().end());
  return pt;
}

PartialCayleyTable partial_from_cells(std::size_t order, const std::vector<Point>& cells)
{
  if (cells.size() != order * order)
    throw std::invalid_argument("partial table must have n*n cells");
  PartialCayleyTable pt(order);
  for (Point i = 0; i < order; ++i)
    for (Point j = 0; j < order; ++j)
      if (Point v = cells[i * order + j]; v != PartialCayleyTable::kUndefined)
        pt.set(i, j, v);
  return pt;
}

}  // namespace loopforge
