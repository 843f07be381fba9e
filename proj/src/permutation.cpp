#include "loopforge/permutation.hpp"

#include <cassert>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace loopforge {

std::string_view to_string(Parity p)
{
  return p == Parity::Even ? "even" : "odd";
}

bool is_bijection(std::span<const Point> images)
{
  std::vector<bool> seen(images.size(), false);
  for (Point v : images) {
    if (v >= images.size() || seen[v])
      return false;
    seen[v] = true;
  }
  return true;
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images))
{
  if (!is_bijection(images_))
    throw std::invalid_argument("permutation images are not a bijection");
}

Permutation::Permutation(std::initializer_list<Point> images)
    : Permutation(std::vector<Point>(images))
{}

Permutation Permutation::identity(std::size_t degree)
{
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(Unchecked{}, std::move(images));
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles)
{
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      Point from = cycle[k];
      Point to = cycle[(k + 1) % cycle.size()];
      if (from >= degree || to >= degree)
        throw std::invalid_argument("cycle point out of range");
      if (used[from])
        throw std::invalid_argument("cycles are not disjoint");
      used[from] = true;
      images[from] = to;
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const
{
  std::vector<Point> inv(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x)
    inv[images_[x]] = static_cast<Point>(x);
  return Permutation(Unchecked{}, std::move(inv));
}

bool Permutation::is_identity() const
{
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x)
      return false;
  return true;
}

Permutation compose(const Permutation& f, const Permutation& g)
{
  if (f.degree() != g.degree())
    throw std::invalid_argument("compose: degree mismatch");
  std::vector<Point> out(g.degree());
  for (std::size_t x = 0; x < out.size(); ++x)
    out[x] = f.images_[g.images_[x]];
  return Permutation(Permutation::Unchecked{}, std::move(out));
}

Permutation power(const Permutation& f, long long k)
{
  Permutation base = k < 0 ? f.inverse() : f;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k)
                               : static_cast<unsigned long long>(k);
  Permutation result = Permutation::identity(f.degree());
  while (e > 0) {
    if (e & 1U)
      result = compose(result, base);
    base = compose(base, base);
    e >>= 1U;
  }
  return result;
}

std::vector<Cycle> cycle_decomposition(const Permutation& f)
{
  std::vector<Cycle> cycles;
  std::vector<bool> seen(f.degree(), false);
  for (Point start = 0; start < f.degree(); ++start) {
    if (seen[start] || f(start) == start)
      continue;
    Cycle c;
    for (Point x = start; !seen[x]; x = f(x)) {
      seen[x] = true;
      c.push_back(x);
    }
    cycles.push_back(std::move(c));
  }
  return cycles;
}

Parity parity_by_cycles(std::span<const Point> images)
{
  // n minus the number of cycles (fixed points included) is the transposition count.
  std::vector<bool> seen(images.size(), false);
  std::size_t cycles = 0;
  for (std::size_t start = 0; start < images.size(); ++start) {
    if (seen[start])
      continue;
    ++cycles;
    for (std::size_t x = start; !seen[x]; x = images[x])
      seen[x] = true;
  }
  return ((images.size() - cycles) % 2 == 0) ? Parity::Even : Parity::Odd;
}

Parity parity_by_inversions(std::span<const Point> images)
{
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (images[i] > images[j])
        ++inversions;
  return inversions % 2 == 0 ? Parity::Even : Parity::Odd;
}

Parity parity(const Permutation& f)
{
  Parity p = parity_by_cycles(f.images());
  assert(p == parity_by_inversions(f.images()));
  return p;
}

std::string to_image_string(const Permutation& f)
{
  std::string out = "[";
  for (std::size_t x = 0; x < f.degree(); ++x) {
    if (x)
      out += ' ';
    out += std::to_string(f(static_cast<Point>(x)));
  }
  out += ']';
  return out;
}

std::string to_cycle_string(const Permutation& f)
{
  auto cycles = cycle_decomposition(f);
  if (cycles.empty())
    return "()";
  std::string out;
  for (const auto& c : cycles) {
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k)
        out += ' ';
      out += std::to_string(c[k]);
    }
    out += ')';
  }
  return out;
}

Permutation parse_image_list(std::string_view text)
{
  auto open = text.find('[');
  auto close = text.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw std::invalid_argument("image list must be enclosed in [ ]");
  std::vector<Point> images;
  std::string_view body = text.substr(open + 1, close - open - 1);
  std::size_t pos = 0;
  while (pos < body.size()) {
    while (pos < body.size() && (body[pos] == ' ' || body[pos] == ',' || body[pos] == '\t'))
      ++pos;
    if (pos >= body.size())
      break;
    Point v = 0;
    auto [ptr, ec] = std::from_chars(body.data() + pos, body.data() + body.size(), v);
    if (ec != std::errc{})
      throw std::invalid_argument("bad integer in image list");
    pos = static_cast<std::size_t>(ptr - body.data());
    images.push_back(v);
  }
  return Permutation(std::move(images));
}

}  // namespace loopforge
