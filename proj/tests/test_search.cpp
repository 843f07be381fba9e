#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "loopforge/search.hpp"
#include "loopforge/table_io.hpp"
#include "test_support.hpp"

using namespace loopforge;

namespace {

// Every reduced latin square of order n (row 0 and column 0 in natural
// order), by cell-by-cell backtracking.
std::vector<oracle::Table> reduced_squares(std::size_t n)
{
  std::vector<oracle::Table> out;
  oracle::Table t(n, std::vector<std::uint32_t>(n, 0));
  for (std::uint32_t x = 0; x < n; ++x)
    t[0][x] = t[x][0] = x;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == (n - 1) * (n - 1)) {
      out.push_back(t);
      return;
    }
    const std::size_t i = 1 + k / (n - 1), j = 1 + k % (n - 1);
    for (std::uint32_t v = 0; v < n; ++v) {
      bool ok = true;
      for (std::size_t c = 0; c < j && ok; ++c)
        ok = t[i][c] != v;
      for (std::size_t r = 0; r < i && ok; ++r)
        ok = t[r][j] != v;
      if (!ok)
        continue;
      t[i][j] = v;
      go(k + 1);
    }
  };
  if (n == 1)
    out.push_back(t);
  else
    go(0);
  return out;
}

// Least relabeling fixing 0, over all (n-1)! of them.
oracle::Table least_relabeling(const oracle::Table& t)
{
  const std::size_t n = t.size();
  std::vector<std::uint32_t> s(n);
  std::iota(s.begin(), s.end(), 0u);
  oracle::Table best;
  do {
    oracle::Table r(n, std::vector<std::uint32_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        r[s[a]][s[b]] = s[t[a][b]];
    if (best.empty() || r < best)
      best = r;
  } while (std::next_permutation(s.begin() + 1, s.end()));
  return best;
}

std::vector<oracle::Table> classes_by_brute_force(std::size_t n)
{
  std::set<oracle::Table> reps;
  for (const auto& t : reduced_squares(n))
    reps.insert(least_relabeling(t));
  return {reps.begin(), reps.end()};
}

std::vector<oracle::Table> enumerated(std::size_t n, const EnumerationOptions& opts = {})
{
  std::vector<oracle::Table> out;
  enumerate_loops(n, [&](const CayleyTable& t) {
    out.push_back(testsupport::to_rows(t));
    return true;
  }, opts);
  return out;
}

struct TempFile {
  std::filesystem::path path = std::filesystem::temp_directory_path() /
                               ("loopforge-cursor-" + std::to_string(std::random_device{}()));
  ~TempFile()
  {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

}  // namespace

TEST_CASE("enumeration matches brute-force isomorphism classes")
{
  const std::size_t expected[] = {0, 1, 1, 1, 2, 6, 109};
  for (std::size_t n = 1; n <= 6; ++n) {
    CAPTURE(n);
    auto brute = classes_by_brute_force(n);
    CHECK(brute.size() == expected[n]);
    CHECK(enumerated(n) == brute);
  }
}

TEST_CASE("emitted tables are canonical and increasing")
{
  for (std::size_t n : {4, 5, 6}) {
    CayleyTable prev;
    bool first = true;
    enumerate_loops(n, [&](const CayleyTable& t) {
      CHECK(canonical_form(t) == t);
      CHECK(validate(t).identity == Point{0});
      if (!first)
        CHECK(prev < t);
      prev = t;
      first = false;
      return true;
    });
  }

  std::size_t seen = 0;
  enumerate_loops(6, [&](const CayleyTable&) { return ++seen < 10; });
  CHECK(seen == 10);
}

TEST_CASE("enumeration order limits")
{
  auto nothing = [](const CayleyTable&) { return true; };
  CHECK_THROWS_AS(enumerate_loops(0, nothing), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_loops(8, nothing), std::invalid_argument);
  CHECK_THROWS_AS(census(8), std::invalid_argument);
  CHECK_THROWS_AS(census(0), std::invalid_argument);
  EnumerationOptions forced;
  forced.allow_long = true;
  CHECK_THROWS_AS(enumerate_loops(9, nothing, forced), std::invalid_argument);
}

TEST_CASE("census of order 5")
{
  auto c = census(5);
  CHECK(c.order == 5);
  CHECK(c.classes == 6);
  CHECK(c.unbreakable == 1);
  CHECK(c.unbreakable_groups == 1);
  CHECK(c.commutative_unbreakable == 0);
  CHECK(c.by_group == std::map<std::string, std::uint64_t>{{"Symmetric", 1}});
}

TEST_CASE("census of order 6")
{
  auto c = census(6);
  CHECK(c.classes == 109);
  CHECK(c.unbreakable == 28);
  CHECK(c.unbreakable_groups == 0);
  CHECK(c.commutative_unbreakable == 0);
  CHECK(c.by_group == std::map<std::string, std::uint64_t>{{"Symmetric", 28}});

  // Against the subset oracle on the same enumeration.
  std::uint64_t unbreakable = 0;
  for (const auto& t : enumerated(6))
    unbreakable += oracle::unbreakable_by_subsets(t, 0) &&
                   !is_associative(testsupport::to_table(t));
  CHECK(unbreakable == 28);

  EnumerationOptions threaded;
  threaded.jobs = 3;
  CHECK(census(6, threaded) == c);
  CHECK(enumerated(6, threaded) == enumerated(6));
}

TEST_CASE("small census values")
{
  CHECK(census(1).classes == 1);
  CHECK(census(2).unbreakable_groups == 1);
  CHECK(census(3).unbreakable_groups == 1);
  CHECK(census(4).classes == 2);
  CHECK(census(4).unbreakable == 0);
  CHECK(census(4).unbreakable_groups == 0);
}

TEST_CASE("census resumes from a cursor file")
{
  const auto full = census(6);
  TempFile f;
  EnumerationOptions opts;
  opts.cursor = f.path;
  CHECK(census(6, opts) == full);
  REQUIRE(std::filesystem::exists(f.path));
  const auto text = read_file(f.path);
  CHECK(text.rfind("cursor n=6\nprefix ", 0) == 0);
  // Everything is already done; the saved totals come back unchanged.
  CHECK(census(6, opts) == full);

  write_file(f.path, "cursor n=6\nprefix\nclasses 0\n");
  CHECK(census(6, opts) == full);

  write_file(f.path, "cursor n=5\nprefix\n");
  CHECK_THROWS_AS(census(6, opts), std::invalid_argument);
  write_file(f.path, "something else\n");
  CHECK_THROWS_AS(census(6, opts), std::invalid_argument);
}

TEST_CASE("census helpers")
{
  CHECK(group_key(GroupClass{GroupKind::Symmetric, 120}) == "Symmetric");
  CHECK(group_key(GroupClass{GroupKind::Alternating, 60}) == "Alternating");
  CHECK(group_key(GroupClass{GroupKind::Other, 1344}) == "Other(1344)");

  Census a, b;
  a.order = b.order = 6;
  a.classes = 3;
  a.by_group["Symmetric"] = 2;
  b.classes = 4;
  b.by_group["Symmetric"] = 1;
  b.by_group["Other(8)"] = 1;
  a.merge(b);
  CHECK(a.classes == 7);
  CHECK(a.by_group["Symmetric"] == 3);
  CHECK(a.by_group["Other(8)"] == 1);
}

TEST_CASE("smallest unbreakable loop is the first one enumerated")
{
  for (std::size_t n : {5, 6}) {
    CAPTURE(n);
    std::optional<CayleyTable> first;
    enumerate_loops(n, [&](const CayleyTable& t) {
      if (is_associative(t) || !is_unbreakable(t))
        return true;
      if (classify_group(multiplication_group(t)).kind != GroupKind::Symmetric)
        return true;
      first = t;
      return false;
    });
    REQUIRE(first);
    CHECK(smallest_unbreakable_loop(n, GroupKind::Symmetric) == first);
  }
  CHECK_FALSE(smallest_unbreakable_loop(4, GroupKind::Symmetric).has_value());
  CHECK_FALSE(smallest_unbreakable_loop(5, GroupKind::Alternating).has_value());
}
