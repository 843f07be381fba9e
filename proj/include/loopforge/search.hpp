#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "loopforge/loop_analysis.hpp"

namespace loopforge {

struct EnumerationOptions {
  /// Orders above 7 are refused unless this is set.
  bool allow_long = false;
  /// Worker threads over second-row branches; output order does not depend on it.
  unsigned jobs = 1;
  /// Resumable progress for long runs (census only).
  std::optional<std::filesystem::path> cursor;
};

/// Calls `emit` once per isomorphism class of loops of order n, with the
/// class's canonical form, in increasing lexicographic order. Returning
/// false from `emit` stops the enumeration. Throws std::invalid_argument for
/// n == 0 or n > 7 without allow_long.
void enumerate_loops(std::size_t n, const std::function<bool(const CayleyTable&)>& emit,
                     const EnumerationOptions& opts = {});

struct Census {
  std::size_t order = 0;
  std::uint64_t classes = 0;
  /// Nonassociative unbreakable loops (groups of prime order are excluded).
  std::uint64_t unbreakable = 0;
  /// Unbreakable groups, i.e. the cyclic group when n is prime.
  std::uint64_t unbreakable_groups = 0;
  /// Multiplication groups of the nonassociative unbreakable loops, keyed
  /// "Symmetric", "Alternating" or "Other(<order>)".
  std::map<std::string, std::uint64_t> by_group;
  std::uint64_t commutative_unbreakable = 0;

  void add(const LoopReport& r);
  void merge(const Census& other);
  friend bool operator==(const Census&, const Census&) = default;
};

std::string group_key(const GroupClass& g);

/// {schema, order, classes, unbreakable, unbreakable_groups,
/// commutative_unbreakable, by_group}.
nlohmann::json census_to_json(const Census& c);

/// Census over enumerate_loops. With opts.cursor, progress is saved after
/// each second-row prefix and a previous run is resumed.
Census census(std::size_t n, const EnumerationOptions& opts = {});

/// Lexicographically smallest nonassociative unbreakable loop of order n
/// whose multiplication group has the given kind. Being smallest among all
/// reduced tables, it is its own canonical form. Runs a pruned search, so it
/// is usable for n = 8.
std::optional<CayleyTable> smallest_unbreakable_loop(std::size_t n, GroupKind kind);

}  // namespace loopforge
