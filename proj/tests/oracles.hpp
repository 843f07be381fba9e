#pragma once

// Brute-force reference computations used only by the tests. None of these
// routines call into the library's group or loop algorithms.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Images = std::vector<std::uint32_t>;

inline Images compose(const Images& f, const Images& g)
{
  Images out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x)
    out[x] = f[g[x]];
  return out;
}

/// Every element of <gens>, by breadth-first closure under right
/// multiplication by generators.
inline std::set<Images> closure(std::size_t degree, const std::vector<Images>& gens)
{
  Images id(degree);
  for (std::size_t i = 0; i < degree; ++i)
    id[i] = static_cast<std::uint32_t>(i);
  std::set<Images> seen{id};
  std::vector<Images> frontier{id};
  while (!frontier.empty()) {
    std::vector<Images> next;
    for (const auto& h : frontier)
      for (const auto& g : gens) {
        Images p = compose(h, g);
        if (seen.insert(p).second)
          next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return seen;
}

inline bool is_even(const Images& p)
{
  std::size_t inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j])
        ++inv;
  return inv % 2 == 0;
}

inline std::uint64_t factorial(std::size_t n)
{
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k)
    f *= k;
  return f;
}

inline Images random_perm(std::size_t degree, std::mt19937_64& rng)
{
  Images p(degree);
  for (std::size_t i = 0; i < degree; ++i)
    p[i] = static_cast<std::uint32_t>(i);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Images cycle_images(std::size_t degree, const std::vector<std::uint32_t>& cycle)
{
  Images p(degree);
  for (std::size_t i = 0; i < degree; ++i)
    p[i] = static_cast<std::uint32_t>(i);
  for (std::size_t k = 0; k < cycle.size(); ++k)
    p[cycle[k]] = cycle[(k + 1) % cycle.size()];
  return p;
}

using Table = std::vector<std::vector<std::uint32_t>>;

/// A loop is unbreakable iff no subset S with identity, 1 < |S| < n, is
/// closed under the operation. Exhaustive over all 2^(n-1) subsets.
inline bool unbreakable_by_subsets(const Table& t, std::uint32_t identity)
{
  const std::size_t n = t.size();
  std::vector<std::uint32_t> others;
  for (std::uint32_t x = 0; x < n; ++x)
    if (x != identity)
      others.push_back(x);
  const std::uint64_t limit = std::uint64_t{1} << others.size();
  for (std::uint64_t mask = 1; mask + 1 < limit; ++mask) {
    std::vector<bool> in(n, false);
    in[identity] = true;
    for (std::size_t k = 0; k < others.size(); ++k)
      if (mask >> k & 1U)
        in[others[k]] = true;
    bool closed = true;
    for (std::uint32_t a = 0; a < n && closed; ++a)
      for (std::uint32_t b = 0; b < n && closed; ++b)
        if (in[a] && in[b] && !in[t[a][b]])
          closed = false;
    if (closed)
      return false;
  }
  return true;
}

/// Latin check by naive counting of every value in every row and column.
inline bool latin_by_counting(const Table& t)
{
  const std::size_t n = t.size();
  for (std::size_t line = 0; line < n; ++line)
    for (std::uint32_t v = 0; v < n; ++v) {
      std::size_t in_row = 0, in_col = 0;
      for (std::size_t k = 0; k < n; ++k) {
        in_row += t[line][k] == v;
        in_col += t[k][line] == v;
      }
      if (in_row != 1 || in_col != 1)
        return false;
    }
  return true;
}

/// Random (not uniform) reduced latin square of small order: identity row
/// and column 0, remaining rows by randomized backtracking with restarts.
inline Table random_reduced_latin_square(std::size_t n, std::mt19937_64& rng)
{
  for (;;) {
    Table t(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t j = 0; j < n; ++j)
      t[0][j] = j;
    bool ok = true;
    for (std::uint32_t i = 1; i < n && ok; ++i) {
      // Randomized backtracking for one row compatible with earlier rows.
      std::vector<std::uint32_t> row(n, 0);
      row[0] = i;
      std::vector<bool> used(n, false);
      used[i] = true;
      std::vector<std::vector<std::uint32_t>> choices(n);
      std::size_t col = 1;
      auto fill_choices = [&](std::size_t c) {
        choices[c].clear();
        for (std::uint32_t v = 0; v < n; ++v) {
          if (used[v])
            continue;
          bool clash = false;
          for (std::uint32_t r = 0; r < i; ++r)
            clash |= t[r][c] == v;
          if (!clash)
            choices[c].push_back(v);
        }
        std::shuffle(choices[c].begin(), choices[c].end(), rng);
      };
      fill_choices(1);
      while (col > 0 && col < n) {
        if (choices[col].empty()) {
          --col;
          if (col > 0)
            used[row[col]] = false;
          continue;
        }
        row[col] = choices[col].back();
        choices[col].pop_back();
        used[row[col]] = true;
        ++col;
        if (col < n)
          fill_choices(col);
      }
      if (col == 0) {
        ok = false;
        break;
      }
      t[i] = row;
    }
    if (ok)
      return t;
  }
}

}  // namespace oracle
