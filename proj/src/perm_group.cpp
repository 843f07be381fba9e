#include "loopforge/perm_group.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace loopforge {

BigInt factorial(std::size_t n)
{
  BigInt f = 1;
  for (std::size_t k = 2; k <= n; ++k)
    f *= k;
  return f;
}

// Sims' algorithm in Knuth's formulation: level k holds coset representatives
// of the stabilizer of 0..k-1 modulo the stabilizer of 0..k. Every product
// (level generator) o (level representative) is sifted into level k+1.
class SchreierSimsBuilder {
public:
  SchreierSimsBuilder(std::size_t degree, BigInt order_bound)
      : n_(degree), levels_(degree), bound_(std::move(order_bound))
  {
    for (std::size_t k = 0; k < n_; ++k) {
      auto& lv = levels_[k];
      lv.point = static_cast<Point>(k);
      lv.reps.assign(n_, std::nullopt);
      lv.inverse_reps.assign(n_, std::nullopt);
      lv.reps[k] = Permutation::identity(n_);
      lv.inverse_reps[k] = Permutation::identity(n_);
    }
    sizes_.assign(n_, 1);
    gens_.resize(n_);
    log_bound_ = log_of(bound_);
  }

  void add_generator(const Permutation& g)
  {
    if (g.degree() != n_)
      throw std::invalid_argument("generator degree mismatch");
    add(0, g);
  }

  GroupDescriptor finish()
  {
    GroupDescriptor gd;
    gd.degree_ = n_;
    gd.order_ = 1;
    for (std::size_t k = 0; k < n_; ++k) {
      if (sizes_[k] <= 1)
        continue;
      gd.base_.push_back(static_cast<Point>(k));
      gd.orbit_sizes_.push_back(sizes_[k]);
      gd.order_ *= sizes_[k];
    }
    for (std::size_t k = 0; k < n_; ++k) {
      for (auto& s : gens_[k])
        gd.strong_generators_.push_back(s);
    }
    gd.levels_ = std::move(levels_);
    return gd;
  }

private:
  static double log_of(const BigInt& v)
  {
    // Adequate for the termination pre-check; exact comparison follows.
    std::string s = v.str();
    double lead = std::stod(s.substr(0, std::min<std::size_t>(15, s.size())));
    return std::log(lead) + static_cast<double>(s.size() - std::min<std::size_t>(15, s.size())) * std::log(10.0);
  }

  bool sifts(std::size_t k, Permutation g) const
  {
    for (std::size_t l = k; l < n_; ++l) {
      if (g.is_identity())
        return true;
      Point x = g(static_cast<Point>(l));
      const auto& inv = levels_[l].inverse_reps[x];
      if (!inv)
        return false;
      g = compose(*inv, g);
    }
    return g.is_identity();
  }

  void add(std::size_t k, const Permutation& g)
  {
    if (complete_ || sifts(k, g))
      return;
    gens_[k].push_back(g);
    std::vector<Point> current;
    for (Point x = 0; x < n_; ++x)
      if (levels_[k].reps[x])
        current.push_back(x);
    for (Point x : current) {
      if (complete_)
        return;
      close(k, compose(g, *levels_[k].reps[x]));
    }
  }

  void close(std::size_t k, const Permutation& g)
  {
    if (complete_)
      return;
    Point x = g(static_cast<Point>(k));
    auto& lv = levels_[k];
    if (!lv.reps[x]) {
      lv.reps[x] = g;
      lv.inverse_reps[x] = g.inverse();
      grow(k);
      // gens_[k] may not grow while this loop runs: only deeper levels change.
      for (std::size_t s = 0; s < gens_[k].size(); ++s)
        close(k, compose(gens_[k][s], g));
    } else {
      add(k + 1, compose(*lv.inverse_reps[x], g));
    }
  }

  void grow(std::size_t k)
  {
    log_order_ += std::log(static_cast<double>(sizes_[k] + 1)) -
                  std::log(static_cast<double>(sizes_[k]));
    ++sizes_[k];
    if (log_order_ + 1e-6 < log_bound_)
      return;
    BigInt order = 1;
    for (std::size_t s : sizes_)
      order *= s;
    if (order == bound_)
      complete_ = true;
  }

  std::size_t n_;
  std::vector<GroupDescriptor::Level> levels_;
  std::vector<std::vector<Permutation>> gens_;
  std::vector<std::size_t> sizes_;
  BigInt bound_;
  double log_bound_ = 0.0;
  double log_order_ = 0.0;
  bool complete_ = false;
};

GroupDescriptor GroupDescriptor::from_generators(std::size_t degree,
                                                 std::span<const Permutation> generators)
{
  // Every representative is a group element, so the product of the level
  // sizes never exceeds |G|. Reaching n! (or n!/2 when all generators are
  // even) therefore certifies that the chain is complete.
  bool all_even = true;
  for (const auto& g : generators) {
    if (g.degree() != degree)
      throw std::invalid_argument("generator degree mismatch");
    if (parity_by_cycles(g.images()) == Parity::Odd)
      all_even = false;
  }
  BigInt bound = factorial(degree);
  if (all_even && degree >= 2)
    bound /= 2;

  SchreierSimsBuilder builder(degree, bound);
  for (const auto& g : generators)
    builder.add_generator(g);
  return builder.finish();
}

Permutation GroupDescriptor::sift(const Permutation& g) const
{
  if (g.degree() != degree_)
    throw std::invalid_argument("sift: degree mismatch");
  Permutation h = g;
  for (const auto& lv : levels_) {
    Point x = h(lv.point);
    const auto& inv = lv.inverse_reps[x];
    if (!inv)
      return h;
    h = compose(*inv, h);
  }
  return h;
}

bool GroupDescriptor::contains(const Permutation& g) const
{
  return sift(g).is_identity();
}

GroupDescriptor sgs_from_generators(std::size_t degree, std::span<const Permutation> generators)
{
  return GroupDescriptor::from_generators(degree, generators);
}

std::string_view to_string(GroupKind k)
{
  switch (k) {
  case GroupKind::Symmetric:
    return "Symmetric";
  case GroupKind::Alternating:
    return "Alternating";
  case GroupKind::Other:
    break;
  }
  return "Other";
}

GroupClass classify_group(const GroupDescriptor& gd)
{
  const std::size_t n = gd.degree();
  BigInt full = factorial(n);
  if (gd.order() == full)
    return {GroupKind::Symmetric, gd.order()};
  if (n >= 2 && gd.order() * 2 == full) {
    bool all_even = true;
    for (const auto& s : gd.strong_generators())
      if (parity(s) == Parity::Odd)
        all_even = false;
    if (all_even)
      return {GroupKind::Alternating, gd.order()};
  }
  return {GroupKind::Other, gd.order()};
}

Point distance(Point a, Point b, Point n)
{
  if (n == 0 || a >= n || b >= n)
    throw std::invalid_argument("distance: points must lie in {0..n-1}");
  return (b + n - a) % n;
}

bool piccard_alternating(Point n, Point a, Point b, Point c)
{
  if (n < 5 || n % 2 == 0)
    throw std::invalid_argument("piccard_alternating: n must be odd and >= 5");
  if (a >= n || b >= n || c >= n || a == b || b == c || a == c)
    throw std::invalid_argument("piccard_alternating: points must be distinct and < n");
  // Conjugating by the n-cycle translates the 3-cycle, so only the
  // differences matter.
  Point g = std::gcd(std::gcd(distance(a, b, n), distance(a, c, n)), n);
  return g == 1;
}

bool piccard_symmetric(Point n, const std::array<Point, 5>& cycle)
{
  if (n < 10 || n % 2 != 0)
    throw std::invalid_argument("piccard_symmetric: n must be even and >= 10");
  for (std::size_t i = 0; i < 5; ++i) {
    if (cycle[i] >= n)
      throw std::invalid_argument("piccard_symmetric: point out of range");
    for (std::size_t j = i + 1; j < 5; ++j)
      if (cycle[i] == cycle[j])
        throw std::invalid_argument("piccard_symmetric: points must be distinct");
  }
  Point g = n;
  for (std::size_t i = 1; i < 5; ++i)
    g = std::gcd(g, distance(cycle[0], cycle[i], n));
  return g == 1;
}

}  // namespace loopforge
