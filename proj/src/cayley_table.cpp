#include "loopforge/cayley_table.hpp"

#include <stdexcept>
#include <string>

namespace loopforge {

CayleyTable::CayleyTable(std::size_t order, std::vector<Point> cells)
    : n_(order), cells_(std::move(cells))
{
  if (n_ == 0)
    throw std::invalid_argument("table order must be positive");
  if (cells_.size() != n_ * n_)
    throw std::invalid_argument("table must have n*n cells");
  for (std::size_t k = 0; k < cells_.size(); ++k)
    if (cells_[k] >= n_)
      throw std::out_of_range("cell [" + std::to_string(k / n_) + "," + std::to_string(k % n_) +
                              "] = " + std::to_string(cells_[k]) + " is outside {0.." +
                              std::to_string(n_ - 1) + "}");
}

CayleyTable CayleyTable::cyclic_group(std::size_t order)
{
  std::vector<Point> cells(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      cells[a * order + b] = static_cast<Point>((a + b) % order);
  return CayleyTable(order, std::move(cells));
}

Validation validate(const CayleyTable& t)
{
  const std::size_t n = t.order();
  Validation v;
  std::vector<std::size_t> stamp(n, 0);
  std::size_t epoch = 0;
  for (int pass = 0; pass < 2; ++pass) {
    const bool rows = pass == 0;
    for (std::size_t line = 0; line < n; ++line) {
      ++epoch;
      for (std::size_t k = 0; k < n; ++k) {
        Point x = rows ? t(static_cast<Point>(line), static_cast<Point>(k))
                       : t(static_cast<Point>(k), static_cast<Point>(line));
        if (stamp[x] == epoch) {
          v.kind = Validity::NotLatin;
          v.witness = LatinWitness{rows, static_cast<Point>(line), x};
          return v;
        }
        stamp[x] = epoch;
      }
    }
  }
  for (Point e = 0; e < n; ++e) {
    bool unit = true;
    for (Point j = 0; j < n && unit; ++j)
      unit = t(e, j) == j && t(j, e) == j;
    if (unit) {
      v.kind = Validity::Loop;
      v.identity = e;
      return v;
    }
  }
  v.kind = Validity::LatinNotLoop;
  return v;
}

Permutation left_action(const CayleyTable& t, Point a)
{
  auto r = t.row(a);
  return Permutation(std::vector<Point>(r.begin(), r.end()));
}

Permutation right_action(const CayleyTable& t, Point a)
{
  std::vector<Point> images(t.order());
  for (Point b = 0; b < t.order(); ++b)
    images[b] = t(b, a);
  return Permutation(std::move(images));
}

CayleyTable relabel(const CayleyTable& t, const Permutation& s)
{
  const std::size_t n = t.order();
  if (s.degree() != n)
    throw std::invalid_argument("relabel: degree mismatch");
  std::vector<Point> cells(n * n);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      cells[s(a) * n + s(b)] = s(t(a, b));
  return CayleyTable(n, std::move(cells));
}

CayleyTable transpose(const CayleyTable& t)
{
  const std::size_t n = t.order();
  std::vector<Point> cells(n * n);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      cells[a * n + b] = t(b, a);
  return CayleyTable(n, std::move(cells));
}

}  // namespace loopforge
