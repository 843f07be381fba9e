#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace loopforge {

using Point = std::uint32_t;

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b)
{
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

std::string_view to_string(Parity p);

/// A bijection on {0, ..., degree-1}, stored as its image list.
class Permutation {
public:
  Permutation() = default;

  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);
  Permutation(std::initializer_list<Point> images);

  static Permutation identity(std::size_t degree);

  /// Builds a permutation from disjoint cycles; unmentioned points are fixed.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  struct Unchecked {};
  Permutation(Unchecked, std::vector<Point> images) : images_(std::move(images)) {}

  friend Permutation compose(const Permutation& f, const Permutation& g);
  friend Permutation power(const Permutation& f, long long k);

  std::vector<Point> images_;
};

/// (f o g)(x) = f(g(x)): the right factor is applied first.
Permutation compose(const Permutation& f, const Permutation& g);

/// f^k for any integer k (negative powers use the inverse).
Permutation power(const Permutation& f, long long k);

using Cycle = std::vector<Point>;

/// Nontrivial cycles, each starting at its minimum, sorted by first element.
std::vector<Cycle> cycle_decomposition(const Permutation& f);

/// Parity from the cycle type; in debug builds cross-checked against the
/// inversion count.
Parity parity(const Permutation& f);

Parity parity_by_cycles(std::span<const Point> images);
Parity parity_by_inversions(std::span<const Point> images);

bool is_bijection(std::span<const Point> images);

/// `[i0 i1 ... i(n-1)]`
std::string to_image_string(const Permutation& f);
/// `(a b c)(d e)`, or `()` for the identity.
std::string to_cycle_string(const Permutation& f);

/// Parses the image-list form; throws std::invalid_argument on bad input.
Permutation parse_image_list(std::string_view text);

}  // namespace loopforge
