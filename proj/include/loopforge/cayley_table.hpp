#pragma once

#include <optional>
#include <span>
#include <vector>

#include "loopforge/permutation.hpp"

namespace loopforge {

/// An n x n operation table over {0..n-1}. Values are range-checked on
/// construction; the latin and loop properties are checked by validate().
class CayleyTable {
public:
  CayleyTable() = default;

  /// Row-major cells; throws std::out_of_range for a value >= n and
  /// std::invalid_argument for a size that is not n*n.
  CayleyTable(std::size_t order, std::vector<Point> cells);

  static CayleyTable cyclic_group(std::size_t order);

  std::size_t order() const { return n_; }
  Point operator()(Point a, Point b) const { return cells_[a * n_ + b]; }
  std::span<const Point> row(Point a) const { return {cells_.data() + a * n_, n_}; }
  std::span<const Point> cells() const { return cells_; }

  friend bool operator==(const CayleyTable&, const CayleyTable&) = default;
  friend auto operator<=>(const CayleyTable&, const CayleyTable&) = default;

private:
  std::size_t n_ = 0;
  std::vector<Point> cells_;
};

enum class Validity { NotLatin, LatinNotLoop, Loop };

/// A repeated value: `value` occurs twice in row (or column) `index`.
struct LatinWitness {
  bool in_row = true;
  Point index = 0;
  Point value = 0;
};

struct Validation {
  Validity kind = Validity::NotLatin;
  std::optional<LatinWitness> witness;  // set for NotLatin
  std::optional<Point> identity;        // set for Loop

  bool is_latin() const { return kind != Validity::NotLatin; }
  bool is_loop() const { return kind == Validity::Loop; }
};

Validation validate(const CayleyTable& t);

/// L_a: b -> a*b. Throws std::invalid_argument if row a is not a permutation.
Permutation left_action(const CayleyTable& t, Point a);
/// R_a: b -> b*a.
Permutation right_action(const CayleyTable& t, Point a);

/// Applies a relabeling: the result satisfies r(s(a), s(b)) = s(t(a, b)).
CayleyTable relabel(const CayleyTable& t, const Permutation& s);

/// Table of the transposed operation, a*b -> b*a.
CayleyTable transpose(const CayleyTable& t);

}  // namespace loopforge
