#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "loopforge/partial_table.hpp"

namespace loopforge {

/// Side conditions for completing a symmetric partial table.
struct ZoneConstraints {
  /// If set, open cells may only take these values.
  std::optional<std::vector<Point>> alphabet;
  /// Forbid 0 at every open cell (i,j) with i+j = n.
  bool forbid_zero_on_antidiagonal = false;
  /// Parity of the full row i (as a permutation of {0..n-1}), checked once
  /// the row is complete. Empty or shorter than n means no target.
  std::vector<std::optional<Parity>> row_parity;
  /// Extra per-cell exclusions, keyed by (i,j) with i <= j.
  std::map<std::pair<Point, Point>, std::vector<Point>> forbidden;
  /// Final filter on complete tables. Rejections are not memoised.
  std::function<bool(const CayleyTable&)> accept;
  /// Give up after this many search nodes; 0 means no limit.
  std::uint64_t node_limit = 0;
};

enum class ZoneStatus { Solved, Unsatisfiable, LimitReached };

struct ZoneResult {
  ZoneStatus status = ZoneStatus::Unsatisfiable;
  std::optional<CayleyTable> table;
  std::uint64_t nodes = 0;
};

/// Depth-first completion of a symmetric partial table. Open cells (i <= j)
/// are visited in row-major order and values are tried in ascending order,
/// so the first solution found is deterministic. Failed subtrees are memoised
/// on the open state of the rows they share with the rest of the search.
/// Throws std::invalid_argument if `pt` is not symmetric or the open cells
/// need more than 64 distinct values.
ZoneResult complete_zone(const PartialCayleyTable& pt, const ZoneConstraints& c);

}  // namespace loopforge
