#include "doctest.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "loopforge/construct_even.hpp"
#include "loopforge/loop_analysis.hpp"
#include "loopforge/search.hpp"
#include "test_support.hpp"

using namespace loopforge;
using testsupport::to_rows;

namespace {

// Missing rows by plain backtracking: for each row, the first row in the
// given symbol order that keeps every column free of repeats.
oracle::Table naive_completion(const PartialCayleyTable& pt, const std::vector<Point>& order)
{
  const std::size_t n = pt.order();
  oracle::Table t;
  for (Point i = 0; i < n && pt.defined(i, 0); ++i) {
    t.emplace_back();
    for (Point j = 0; j < n; ++j)
      t.back().push_back(pt.at(i, j));
  }
  while (t.size() < n) {
    std::vector<std::uint32_t> row(n);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> go = [&](std::size_t j) {
      if (j == n)
        return true;
      for (Point s : order) {
        if (used[s])
          continue;
        bool clash = false;
        for (const auto& r : t)
          clash |= r[j] == s;
        if (clash)
          continue;
        used[s] = true;
        row[j] = s;
        if (go(j + 1))
          return true;
        used[s] = false;
      }
      return false;
    };
    REQUIRE(go(0));
    t.push_back(row);
  }
  return t;
}

std::vector<Point> ascending(std::size_t n)
{
  std::vector<Point> v(n);
  std::iota(v.begin(), v.end(), Point{0});
  return v;
}

PartialCayleyTable top_rows(const CayleyTable& t, std::size_t rows)
{
  PartialCayleyTable pt(t.order());
  for (Point i = 0; i < rows; ++i)
    for (Point j = 0; j < t.order(); ++j)
      pt.set(i, j, t(i, j));
  return pt;
}

// Length of the orbit of 0 under f, by iteration.
std::size_t orbit_of_zero(const Permutation& f)
{
  std::size_t len = 1;
  for (Point x = f(0); x != 0; x = f(x))
    ++len;
  return len;
}

std::vector<oracle::Images> all_actions(const CayleyTable& t)
{
  std::vector<oracle::Images> gens;
  for (Point a = 0; a < t.order(); ++a) {
    const auto l = left_action(t, a), r = right_action(t, a);
    gens.emplace_back(l.images().begin(), l.images().end());
    gens.emplace_back(r.images().begin(), r.images().end());
  }
  return gens;
}

}  // namespace

TEST_CASE("rectangle of order 10")
{
  auto pt = build_rectangle(10);
  std::vector<Point> row0, row2;
  for (Point j = 0; j < 10; ++j) {
    row0.push_back(pt.at(0, j));
    row2.push_back(pt.at(2, j));
  }
  CHECK(row0 == ascending(10));
  CHECK(row2 == std::vector<Point>{2, 9, 5, 6, 7, 8, 1, 0, 4, 3});
  CHECK(pt.at(5, 5) == 4);
  CHECK(pt.at(5, 6) == 0);
  for (Point j = 0; j < 10; ++j)
    CHECK_FALSE(pt.defined(6, j));
}

TEST_CASE("rectangle properties")
{
  for (Point n = 10; n <= 40; n += 2) {
    CAPTURE(n);
    const Point p = n / 2;
    auto pt = build_rectangle(n);
    oracle::Table rows;
    for (Point i = 0; i <= p; ++i) {
      rows.emplace_back();
      for (Point j = 0; j < n; ++j) {
        REQUIRE(pt.defined(i, j));
        rows.back().push_back(pt.at(i, j));
      }
    }
    // Latin rectangle: every row a permutation, no column repeats.
    const auto symbols = ascending(n);
    for (const auto& r : rows) {
      auto sorted = r;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == oracle::Images(symbols.begin(), symbols.end()));
    }
    for (Point j = 0; j < n; ++j) {
      std::vector<bool> seen(n, false);
      for (const auto& r : rows) {
        CHECK_FALSE(seen[r[j]]);
        seen[r[j]] = true;
      }
    }
    for (Point i = 0; i <= p; ++i)
      CHECK(rows[i][0] == i);
    for (Point i = 2; i <= p - 1; ++i)
      CHECK(rows[i][i] == p);
    for (Point i = 1; i <= p - 2; ++i)
      CHECK(rows[i][2 * p - 1] == i + 1);
    // Where each of rows 1..p keeps its 0.
    CHECK(rows[1][p] == 0);
    for (Point i = 2; i <= p - 1; ++i)
      CHECK(rows[i][p + i] == 0);
    CHECK(rows[p][p + 1] == 0);
    CHECK(rows[p][p] == p - 1);
    CHECK(rows[p][p + 1] == 0);
    CHECK(rows[p][p - 1] == 2 * p - 1);
    CHECK(rows[p][2 * p - 1] == 1);
    CHECK(rows[1][p] == 0);
    CHECK(rows[1][p + 1] == 2 * p - 1);
    for (Point j = 1; j <= p - 1; ++j)
      CHECK(rows[1][j] == p + j - 1);
  }
  CHECK_THROWS_AS(build_rectangle(8), std::invalid_argument);
  CHECK_THROWS_AS(build_rectangle(11), std::invalid_argument);
}

TEST_CASE("complete_rectangle")
{
  for (Point n = 10; n <= 16; n += 2) {
    CAPTURE(n);
    auto pt = build_rectangle(n);
    auto t = complete_rectangle(pt);
    auto rows = to_rows(t);
    CHECK(oracle::latin_by_counting(rows));
    CHECK(rows == naive_completion(pt, ascending(n)));
    for (Point i = 0; i <= n / 2; ++i)
      for (Point j = 0; j < n; ++j)
        CHECK(t(i, j) == pt.at(i, j));

    auto reversed = ascending(n);
    std::reverse(reversed.begin(), reversed.end());
    CHECK(to_rows(complete_rectangle(pt, reversed)) == naive_completion(pt, reversed));
  }

  // A single row always extends; an (n-1)-row rectangle has one completion.
  std::mt19937_64 rng(11);
  for (std::size_t n : {1, 2, 5, 9, 12}) {
    PartialCayleyTable one(n);
    for (Point j = 0; j < n; ++j)
      one.set(0, j, j);
    CHECK(oracle::latin_by_counting(to_rows(complete_rectangle(one))));

    auto square = testsupport::random_loop(n, rng);
    auto forced = complete_rectangle(top_rows(square, n - 1));
    CHECK(forced == square);
  }

  PartialCayleyTable gap(5);
  for (Point j = 0; j < 5; ++j)
    gap.set(0, j, j);
  gap.set(2, 0, 2);
  CHECK_THROWS_AS(complete_rectangle(gap), std::invalid_argument);
  PartialCayleyTable ragged(5);
  ragged.set(0, 0, 0);
  CHECK_THROWS_AS(complete_rectangle(ragged), std::invalid_argument);
  CHECK_THROWS_AS(complete_rectangle(build_rectangle(10), {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(complete_rectangle(build_rectangle(10), {0, 1, 2, 3, 4, 5, 6, 7, 8, 8}),
                  std::invalid_argument);
}

TEST_CASE("normalize_first_column")
{
  auto t = normalize_first_column(complete_rectangle(build_rectangle(10)));
  CHECK(validate(t).is_loop());
  CHECK(validate(t).identity == Point{0});
  CHECK(normalize_first_column(t) == t);

  auto rows = to_rows(t);
  std::swap(rows[7], rows[9]);
  CHECK(testsupport::to_table(rows) != t);
  CHECK(normalize_first_column(testsupport::to_table(rows)) == t);

  std::mt19937_64 rng(2);
  std::shuffle(rows.begin() + 6, rows.end(), rng);
  CHECK(normalize_first_column(testsupport::to_table(rows)) == t);

  rows[8] = rows[9];
  CHECK_THROWS_AS(normalize_first_column(testsupport::to_table(rows)), std::invalid_argument);
}

TEST_CASE("any completion of the rectangle gives an unbreakable S_n loop")
{
  for (Point n : {10, 12, 14}) {
    std::mt19937_64 rng(n);
    auto reversed = ascending(n);
    std::reverse(reversed.begin(), reversed.end());
    auto rotated = ascending(n);
    std::rotate(rotated.begin(), rotated.begin() + 3, rotated.end());
    auto shuffled1 = ascending(n), shuffled2 = ascending(n);
    std::shuffle(shuffled1.begin(), shuffled1.end(), rng);
    std::shuffle(shuffled2.begin(), shuffled2.end(), rng);
    std::vector<CayleyTable> seen;
    for (const auto& order : {ascending(n), reversed, rotated, shuffled1, shuffled2}) {
      CAPTURE(n);
      auto t = normalize_first_column(complete_rectangle(build_rectangle(n), order));
      seen.push_back(t);
      auto rows = to_rows(t);
      CHECK(oracle::latin_by_counting(rows));
      CHECK(oracle::unbreakable_by_subsets(rows, 0));
      CHECK_FALSE(is_commutative(t));
      CHECK(classify_group(multiplication_group(t)).kind == GroupKind::Symmetric);
      CHECK(certify_even_generators(t).all_hold());
    }
    std::sort(seen.begin(), seen.end());
    CHECK(std::unique(seen.begin(), seen.end()) - seen.begin() > 1);
  }
}

TEST_CASE("proof permutations at order 10 and 12")
{
  auto t = construct_even_loop(10);
  const auto l1 = left_action(t, 1), lp = left_action(t, 5);
  const auto r = compose(power(l1, 3), lp);
  CHECK(r(0) == 5);
  CHECK(r(1) == 6);
  CHECK(r(9) == 1);
  CHECK(orbit_of_zero(r) == 10);
  const auto s = compose(power(l1, 4), power(power(lp, 4), 2));
  CHECK(cycle_decomposition(s) == std::vector<Cycle>{{0, 4, 5, 2, 6}});

  auto t12 = construct_even_loop(12);
  const auto lp12 = left_action(t12, 6);
  CHECK(lp12(3) == 9);
  CHECK(lp12(9) == 3);
  const auto l112 = left_action(t12, 1);
  CHECK(l112(4) == 9);
  CHECK(l112(9) == 4);
}

TEST_CASE("relabeling sends R to the standard n-cycle")
{
  for (Point n = 10; n <= 60; n += 2) {
    CAPTURE(n);
    const Point p = n / 2;
    auto t = construct_even_loop(n);
    const auto l1 = left_action(t, 1), lp = left_action(t, p);
    const auto r = compose(power(l1, 3), lp);
    const auto s = compose(power(l1, 4), power(power(lp, 4), 2));
    const auto f = even_relabeling(n);
    const auto fr = compose(compose(f, r), f.inverse());
    for (Point x = 0; x < n; ++x)
      CHECK(fr(x) == (x + 1) % n);
    const auto fs = compose(compose(f, s), f.inverse());
    CHECK(cycle_decomposition(fs).size() == 1);
    // Cycle (0 2p-4 1 p-1 2p-1), read off point by point.
    CHECK(fs(0) == 2 * p - 4);
    CHECK(fs(2 * p - 4) == 1);
    CHECK(fs(1) == p - 1);
    CHECK(fs(p - 1) == 2 * p - 1);
    CHECK(fs(2 * p - 1) == 0);
  }
}

TEST_CASE("certificate")
{
  for (Point n = 10; n <= 60; n += 2) {
    CAPTURE(n);
    auto cert = certify_even_generators(construct_even_loop(n));
    CHECK(cert.order == n);
    CHECK(cert.all_hold());
    CHECK_FALSE(cert.failure().has_value());
    CHECK(cert.claims.size() >= 12);
  }

  auto z10 = CayleyTable::cyclic_group(10);
  auto bad = certify_even_generators(z10);
  CHECK_FALSE(bad.all_hold());
  REQUIRE(bad.failure().has_value());
  CHECK(*bad.failure() == bad.claims.front().claim);

  CHECK_THROWS_AS(certify_even_generators(CayleyTable::cyclic_group(11)), std::invalid_argument);
  CHECK_THROWS_AS(certify_even_generators(CayleyTable::cyclic_group(8)), std::invalid_argument);

  auto j = certificate_to_json(certify_even_generators(construct_even_loop(12)));
  CHECK(j["schema"] == 1);
  CHECK(j["order"] == 12);
  CHECK(j["all_hold"] == true);
  REQUIRE(j["claims"].is_array());
  for (const auto& c : j["claims"]) {
    CHECK(c["claim"].is_string());
    CHECK(c["holds"] == true);
  }
}

TEST_CASE("even construction")
{
  for (Point n = 10; n <= 24; n += 2) {
    CAPTURE(n);
    auto t = construct_even_loop(n);
    auto r = analyze(t);
    CHECK(r.is_loop);
    CHECK(r.identity == Point{0});
    CHECK(r.unbreakable);
    CHECK_FALSE(r.commutative);
    REQUIRE(r.group);
    CHECK(r.group->kind == GroupKind::Symmetric);
    CHECK(r.group->order == factorial(n));
  }
  CHECK_THROWS_AS(construct_even_loop(4), std::invalid_argument);
  CHECK_THROWS_AS(construct_even_loop(11), std::invalid_argument);
}

TEST_CASE("even orders 6 and 8 come from search")
{
  for (std::size_t n : {6, 8}) {
    CAPTURE(n);
    auto t = construct_even_loop(n);
    CHECK(t == *smallest_unbreakable_loop(n, GroupKind::Symmetric));
    CHECK(canonical_form(t) == t);
    auto rows = to_rows(t);
    CHECK(oracle::latin_by_counting(rows));
    CHECK(oracle::unbreakable_by_subsets(rows, 0));
    CHECK_FALSE(is_commutative(t));
    CHECK_FALSE(is_associative(t));
    CHECK(oracle::closure(n, all_actions(t)).size() == oracle::factorial(n));
  }
}
