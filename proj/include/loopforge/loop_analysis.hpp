#pragma once

#include <optional>
#include <vector>

#include "loopforge/cayley_table.hpp"
#include "loopforge/perm_group.hpp"

namespace loopforge {

/// Group generated by all left and right actions (left only when the table
/// is commutative). Requires a loop.
GroupDescriptor multiplication_group(const CayleyTable& t);

/// Smallest multiplicatively closed set containing `seed`, sorted ascending.
/// In a finite loop such a set is a subloop: restricted translations are
/// injective on a finite set, so both divisions stay inside it.
std::vector<Point> subloop_closure(const CayleyTable& t, std::span<const Point> seed);

/// True iff every non-identity element generates the whole loop.
bool is_unbreakable(const CayleyTable& t);
bool is_commutative(const CayleyTable& t);
bool is_associative(const CayleyTable& t);

struct LoopReport {
  std::size_t order = 0;
  bool is_latin = false;
  bool is_loop = false;
  std::optional<Point> identity;
  bool commutative = false;
  bool associative = false;
  bool unbreakable = false;
  std::optional<GroupClass> group;
  std::vector<Parity> left_parities;
  std::vector<Parity> right_parities;  // empty for commutative loops
  std::optional<LatinWitness> witness;

  friend bool operator==(const LoopReport&, const LoopReport&) = default;
};

LoopReport analyze(const CayleyTable& t);

/// Lexicographically least table over all relabelings fixing 0. Two loops
/// with identity 0 are isomorphic iff their canonical forms coincide.
/// Throws std::invalid_argument unless 0 is a two-sided identity.
CayleyTable canonical_form(const CayleyTable& t);

/// Equivalent to canonical_form(t) == t, but stops at the first smaller
/// relabeling.
bool is_canonical(const CayleyTable& t);

}  // namespace loopforge
