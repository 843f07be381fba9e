#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "loopforge/permutation.hpp"

namespace loopforge {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(std::size_t n);

/// A permutation group held as a stabilizer chain with a strong generating set.
///
/// The chain uses the fixed base order 0, 1, ..., n-1; levels whose basic orbit
/// is trivial are dropped from the reported base. Construction is
/// deterministic for a given generator sequence.
class GroupDescriptor {
public:
  /// Schreier-Sims closure of `generators`; every generator must have
  /// degree `degree`. An empty list yields the trivial group.
  static GroupDescriptor from_generators(std::size_t degree,
                                         std::span<const Permutation> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Point>& base() const { return base_; }
  const std::vector<Permutation>& strong_generators() const { return strong_generators_; }
  /// Basic orbit sizes along the reported base.
  const std::vector<std::size_t>& orbit_sizes() const { return orbit_sizes_; }
  const BigInt& order() const { return order_; }

  /// Residue of `g` after sifting through the chain; identity iff g is a member.
  Permutation sift(const Permutation& g) const;
  bool contains(const Permutation& g) const;

private:
  struct Level {
    Point point = 0;
    // reps[x] maps `point` to x; inverse kept alongside for sifting.
    std::vector<std::optional<Permutation>> reps;
    std::vector<std::optional<Permutation>> inverse_reps;
  };

  friend class SchreierSimsBuilder;

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
  std::vector<Point> base_;
  std::vector<std::size_t> orbit_sizes_;
  std::vector<Permutation> strong_generators_;
  BigInt order_ = 1;
};

GroupDescriptor sgs_from_generators(std::size_t degree, std::span<const Permutation> generators);

enum class GroupKind { Symmetric, Alternating, Other };

struct GroupClass {
  GroupKind kind = GroupKind::Other;
  BigInt order;

  friend bool operator==(const GroupClass&, const GroupClass&) = default;
};

std::string_view to_string(GroupKind k);

/// Symmetric iff |G| = n!; Alternating iff |G| = n!/2 and every strong
/// generator is even; otherwise Other carrying |G|.
GroupClass classify_group(const GroupDescriptor& gd);

/// The d in {0..n-1} with a + d = b (mod n).
Point distance(Point a, Point b, Point n);

/// For odd n >= 5: whether the n-cycle (0 1 ... n-1) and the 3-cycle (a b c)
/// generate A_n. Throws std::invalid_argument on violated preconditions.
bool piccard_alternating(Point n, Point a, Point b, Point c);

/// For even n >= 10: whether (0 1 ... n-1) and the 5-cycle generate S_n,
/// i.e. gcd of the distances from the first point and n is 1.
bool piccard_symmetric(Point n, const std::array<Point, 5>& cycle);

}  // namespace loopforge
