#include "loopforge/construct_odd.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "loopforge/loop_analysis.hpp"
#include "loopforge/search.hpp"
#include "loopforge/table_io.hpp"

namespace loopforge {

namespace {

constexpr Point kOpen = PartialCayleyTable::kUndefined;

// Dense symmetric cell list. Formula cells may be overwritten by
// explicit ones; two explicit cells disagreeing is a conflict.
class Spec {
public:
  explicit Spec(std::size_t n) : n_(static_cast<Point>(n)), cells_(n * n, kOpen), fixed_(n * n) {}

  Point n() const { return n_; }
  Point p() const { return (n_ - 1) / 2; }

  void formula_off_zone()
  {
    for (Point i = 0; i < n_; ++i)
      for (Point j = 0; j < n_; ++j)
        if (!in_zone(n_, i, j))
          cells_[i * n_ + j] = (i + j) % n_;
  }

  void put(Point i, Point j, Point v)
  {
    for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
      const std::size_t k = a * n_ + b;
      if (fixed_[k] && cells_[k] != v)
        throw CellConflict(a, b, a, b, cells_[k]);
      cells_[k] = v;
      fixed_[k] = true;
    }
  }

  PartialCayleyTable build() const { return partial_from_cells(n_, cells_); }

private:
  Point n_;
  std::vector<Point> cells_;
  std::vector<bool> fixed_;
};

void require_odd(std::size_t n, std::size_t minimum, const char* what)
{
  if (n % 2 == 0 || n < minimum)
    throw std::invalid_argument(std::string(what) + " needs odd n >= " + std::to_string(minimum) +
                                ", got " + std::to_string(n));
}

void overrides(Spec& s)
{
  const Point n = s.n(), p = s.p();
  s.put(1, 2, 0);
  s.put(1, p + 2, 3);
  s.put(p + 4, n - 1, 5);
}

void first_rows(Spec& s)
{
  const Point n = s.n(), p = s.p();
  s.put(1, n - 1, p + 3);
  s.put(2, n - 2, 1);
  s.put(2, n - 1, 3);
}

void top_right(Spec& s)
{
  const Point n = s.n();
  first_rows(s);
  s.put(3, n - 3, 1);
  s.put(3, n - 2, 2);
  s.put(3, n - 1, 0);
  s.put(4, n - 4, 1);
  s.put(4, n - 3, 0);
  s.put(4, n - 2, 3);
  s.put(4, n - 1, 2);
  s.put(5, n - 5, 2);
  s.put(5, n - 4, 0);
  s.put(5, n - 3, 3);
  s.put(5, n - 2, 4);
  s.put(5, n - 1, 1);
}

void central_triangle(Spec& s)
{
  const Point p = s.p();
  s.put(p + 1, p + 1, 3);
  s.put(p + 1, p + 2, 0);
  s.put(p + 1, p + 3, 5);
  s.put(p + 1, p + 4, 4);
  s.put(p + 1, p + 5, 2);
  s.put(p + 2, p + 2, 5);
  s.put(p + 2, p + 3, 4);
  s.put(p + 2, p + 4, p + 3);
  s.put(p + 3, p + 3, 1);
}

Spec template_spec(std::size_t n)
{
  Spec s(n);
  s.formula_off_zone();
  overrides(s);
  top_right(s);
  central_triangle(s);
  return s;
}

bool accept_target(const CayleyTable& t, TargetGroup target)
{
  if (!is_unbreakable(t))
    return false;
  const auto cls = classify_group(multiplication_group(t));
  return cls.kind == (target == TargetGroup::Symmetric ? GroupKind::Symmetric
                                                       : GroupKind::Alternating);
}

std::vector<std::optional<Parity>> all_rows(std::size_t n, Parity parity)
{
  return std::vector<std::optional<Parity>>(n, parity);
}

}  // namespace

std::string to_string(TargetGroup g)
{
  return g == TargetGroup::Symmetric ? "Symmetric" : "Alternating";
}

PartialCayleyTable build_template(std::size_t n)
{
  require_odd(n, 13, "build_template");
  return template_spec(n).build();
}

PartialCayleyTable build_augmented_template(std::size_t n)
{
  require_odd(n, 43, "build_augmented_template");
  Spec s = template_spec(n);
  const Point N = static_cast<Point>(n), p = s.p();
  const Point row6[] = {3, 1, 5, 2, 0, 4};
  const Point row7[] = {1, 2, 0, 3, 4, 5};
  for (Point d = 0; d < 6; ++d) {
    s.put(6, N - 6 + d, row6[d]);
    s.put(7, N - 7 + d, row7[d]);
  }
  s.put(8, N - 4, 4);
  s.put(8, N - 3, 5);
  s.put(9, N - 4, 2);

  const Point rowp[] = {1, 2, 0, 3, 4, 5};
  const Point rowp1[] = {1, 2, 0, 3, 4, 5};
  for (Point d = 0; d < 6; ++d) {
    s.put(p, p + 1 + d, rowp[d]);
    s.put(p - 1, p + 2 + d, rowp1[d]);
  }
  s.put(p - 2, p + 3, 3);
  s.put(p - 2, p + 4, 1);
  s.put(p - 2, p + 5, 5);
  s.put(p - 3, p + 4, 2);
  s.put(p - 3, p + 5, 0);
  s.put(p - 4, p + 5, 1);
  return s.build();
}

PartialCayleyTable build_simplified_template(std::size_t n, bool central)
{
  require_odd(n, 9, "build_simplified_template");
  Spec s(n);
  s.formula_off_zone();
  overrides(s);
  first_rows(s);
  if (central)
    central_triangle(s);
  return s.build();
}

bool matches_template(const CayleyTable& t)
{
  const std::size_t n = t.order();
  if (n % 2 == 0 || n < 9)
    return false;
  const PartialCayleyTable pt = build_simplified_template(n, false);
  for (Point i = 0; i < n; ++i)
    for (Point j = 0; j < n; ++j)
      if (!in_zone(n, i, j) && pt.at(i, j) != t(i, j))
        return false;
  return true;
}

Parity segment_parity(std::span<const Point> segment)
{
  if (segment.size() != 6)
    throw std::invalid_argument("zone segment must have six cells");
  std::vector<Point> images(segment.begin(), segment.end());
  if (!is_bijection(images))
    throw std::invalid_argument("zone segment is not a permutation of {0..5}");
  return parity_by_cycles(images);
}

Parity zone_row_parity(const CayleyTable& t, Point i)
{
  const std::size_t n = t.order();
  const std::size_t p = (n - 1) / 2;
  if (n % 2 == 0 || n < 13)
    throw std::invalid_argument("zone parity applies to odd orders >= 13");
  if (i < 6 || i > n - 2 || i == p + 2 || i == p + 4)
    throw std::invalid_argument("row " + std::to_string(i) +
                                " is outside the range where the zone segment decides parity");
  std::array<Point, 6> seg{};
  for (Point d = 0; d < 6; ++d)
    seg[d] = t(i, static_cast<Point>(n - i + d));
  return segment_parity(seg);
}

CacheOptions cache_from_environment()
{
  CacheOptions c;
  if (const char* dir = std::getenv("LOOPFORGE_CACHE"); dir && *dir)
    c.dir = dir;
  return c;
}

CayleyTable fill_symmetric(std::size_t n)
{
  require_odd(n, 21, "fill_symmetric");
  const PartialCayleyTable base = build_template(n);
  const Point N = static_cast<Point>(n), p = static_cast<Point>((n - 1) / 2);
  // Four-row pattern placed on rows p, p-1, p-2, p-3 (bottom row first).
  static constexpr Point pattern[4][6] = {
      {1, 2, 0, 3, 4, 5},
      {1, 2, 0, 5, 3, 4},
      {3, 2, 0, 4, 1, 5},
      {1, 3, 0, 5, 4, 2},
  };
  ZoneConstraints c;
  c.forbid_zero_on_antidiagonal = true;
  c.row_parity.assign(n, std::nullopt);
  c.row_parity[6] = Parity::Odd;

  // Pattern rows from p upwards as far as they fit below row 6 without
  // touching the top right region; fewer if the search fails.
  Point fits = 0;
  {
    PartialCayleyTable pt = base;
    try {
      for (; p - fits > 6; ++fits) {
        const Point r = p - fits;
        for (Point d = 0; d < 6; ++d)
          pt.set_symmetric(r, N - r + d, pattern[fits % 4][d]);
      }
    } catch (const CellConflict&) {
    }
  }
  for (Point rows = fits + 1; rows-- > 0;) {
    PartialCayleyTable pt = base;
    for (Point k = 0; k < rows; ++k) {
      const Point r = p - k;
      for (Point d = 0; d < 6; ++d)
        pt.set_symmetric(r, N - r + d, pattern[k % 4][d]);
    }
    auto res = complete_zone(pt, c);
    if (res.status == ZoneStatus::Solved)
      return *res.table;
  }
  throw ConstructionDefect("no completion of the template for n = " + std::to_string(n));
}

std::string format_fragment(const ZoneFragment& f)
{
  std::ostringstream out;
  out << "zone-fragment n=" << f.order << " rows=" << f.first_row << ".."
      << f.first_row + f.rows.size() - 1 << '\n';
  for (const auto& row : f.rows) {
    for (std::size_t d = 0; d < row.size(); ++d)
      out << (d ? " " : "") << row[d];
    out << '\n';
  }
  return out.str();
}

ZoneFragment parse_fragment(std::string_view text)
{
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(1, 1, "empty fragment");
  ZoneFragment f;
  unsigned long long order = 0, first = 0, last = 0;
  char tail = 0;
  if (std::sscanf(line.c_str(), "zone-fragment n=%llu rows=%llu..%llu%c", &order, &first, &last,
                  &tail) != 3 ||
      last < first)
    throw ParseError(1, 1, "expected 'zone-fragment n=<n> rows=<r>..<r>'");
  f.order = order;
  f.first_row = static_cast<Point>(first);
  for (std::size_t r = first, lineno = 2; r <= last; ++r, ++lineno) {
    if (!std::getline(in, line))
      throw ParseError(lineno, 1, "missing row " + std::to_string(r));
    std::istringstream row(line);
    BandRow values{};
    for (std::size_t d = 0; d < 6; ++d)
      if (!(row >> values[d]) || values[d] > 5)
        throw ParseError(lineno, 2 * d + 1, "expected a value in 0..5");
    std::string extra;
    if (row >> extra)
      throw ParseError(lineno, 13, "more than six values");
    f.rows.push_back(values);
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw ParseError(f.rows.size() + 2, 1, "trailing content");
  return f;
}

ZoneFragment extract_band(const CayleyTable& t, Point first, Point last)
{
  const std::size_t n = t.order();
  if (n % 2 == 0 || first < 6 || last < first || last > (n - 1) / 2)
    throw std::invalid_argument("band rows must lie in 6..p of an odd-order table");
  ZoneFragment f{n, first, {}};
  for (Point i = first; i <= last; ++i) {
    BandRow row{};
    for (Point d = 0; d < 6; ++d)
      row[d] = t(i, static_cast<Point>(n - i + d));
    f.rows.push_back(row);
  }
  return f;
}

void apply_fragment(PartialCayleyTable& pt, const ZoneFragment& f)
{
  const std::size_t n = pt.order();
  if (f.order != n)
    throw std::invalid_argument("fragment order does not match the table");
  for (std::size_t k = 0; k < f.rows.size(); ++k) {
    const Point i = f.first_row + static_cast<Point>(k);
    for (Point d = 0; d < 6; ++d)
      pt.set_symmetric(i, static_cast<Point>(n - i + d), f.rows[k][d]);
  }
}

namespace {

constexpr std::size_t kMinAltOrder = 43;
// Tiling starts from bases of these orders; smaller n are solved whole.
constexpr std::size_t kFirstBase = 61;
constexpr std::size_t kLastBase = 101;

std::optional<std::string> cache_read(const CacheOptions& cache, const std::string& name)
{
  if (!cache.dir)
    return std::nullopt;
  std::ifstream in(*cache.dir / name);
  if (!in)
    return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void cache_write(const CacheOptions& cache, const std::string& name, const std::string& text)
{
  if (!cache.dir)
    return;
  std::error_code ec;
  std::filesystem::create_directories(*cache.dir, ec);
  const auto tmp = *cache.dir / (name + ".tmp");
  {
    std::ofstream out(tmp);
    if (!(out << text))
      return;  // the cache is best effort
  }
  std::filesystem::rename(tmp, *cache.dir / name, ec);
}

ZoneConstraints alternating_constraints(std::size_t n)
{
  ZoneConstraints c;
  c.forbid_zero_on_antidiagonal = true;
  c.row_parity = all_rows(n, Parity::Even);
  return c;
}

// Completes the augmented template around a full band; with every zone
// cell given this only checks it.
std::optional<CayleyTable> realize(const ZoneFragment& band)
{
  PartialCayleyTable pt = build_augmented_template(band.order);
  try {
    apply_fragment(pt, band);
  } catch (const CellConflict&) {
    return std::nullopt;
  }
  auto res = complete_zone(pt, alternating_constraints(band.order));
  if (res.status != ZoneStatus::Solved)
    return std::nullopt;
  return res.table;
}

std::optional<CayleyTable> solve_alternating(std::size_t n)
{
  auto res = complete_zone(build_augmented_template(n), alternating_constraints(n));
  if (res.status != ZoneStatus::Solved)
    return std::nullopt;
  return res.table;
}

Point last_band_row(std::size_t n)
{
  return static_cast<Point>((n - 1) / 2);
}

std::optional<ZoneFragment> base_band(std::size_t b, const CacheOptions& cache)
{
  const std::string name = "alternating-base-" + std::to_string(b) + ".txt";
  if (auto text = cache_read(cache, name)) {
    try {
      auto f = parse_fragment(*text);
      if (f.order == b && f.first_row == 6 && f.rows.size() == last_band_row(b) - 5 && realize(f))
        return f;
    } catch (const ParseError&) {
    }
  }
  auto t = solve_alternating(b);
  if (!t)
    return std::nullopt;
  auto f = extract_band(*t, 6, last_band_row(b));
  cache_write(cache, name, format_fragment(f));
  return f;
}

}  // namespace

std::array<Point, 15> cut_state(const ZoneFragment& band, Point cut)
{
  const Point last = band.first_row + static_cast<Point>(band.rows.size());
  if (cut < band.first_row + 5 || cut > last)
    throw std::out_of_range("cut " + std::to_string(cut) + " needs five band rows above it");
  std::array<Point, 15> out{};
  std::size_t k = 0;
  for (Point up = 1; up <= 5; ++up)
    for (Point d = 0; d + up <= 5; ++d)
      out[k++] = band.rows[cut - up - band.first_row][d];
  return out;
}

std::optional<ZoneBlock> find_block(const ZoneFragment& band, Point min_row)
{
  const Point first = std::max(band.first_row, min_row);
  const Point end = band.first_row + static_cast<Point>(band.rows.size());
  // Keep the last five rows out of blocks: near the centre the template
  // pins them.
  if (end < first + 10)
    return std::nullopt;
  const Point stop = end - 5;
  for (Point length = 1; first + 5 + length <= stop; ++length)
    for (Point c = first + 5; c + length <= stop; ++c)
      if (cut_state(band, c) == cut_state(band, c + length))
        return ZoneBlock{c, length};
  return std::nullopt;
}

ZoneFragment repeat_block(const ZoneFragment& band, const ZoneBlock& block, std::size_t copies)
{
  const Point end = band.first_row + static_cast<Point>(band.rows.size());
  if (block.length == 0 || block.first < band.first_row || block.first + block.length > end)
    throw std::out_of_range("block lies outside the band");
  const auto begin = band.rows.begin() + (block.first - band.first_row);
  const auto cut = begin + block.length;
  ZoneFragment out{band.order + 2 * copies * block.length, band.first_row, {}};
  out.rows.assign(band.rows.begin(), cut);
  for (std::size_t c = 0; c < copies; ++c)
    out.rows.insert(out.rows.end(), begin, cut);
  out.rows.insert(out.rows.end(), cut, band.rows.end());
  return out;
}

CayleyTable fill_alternating(std::size_t n, const CacheOptions& cache)
{
  require_odd(n, kMinAltOrder, "fill_alternating");
  for (std::size_t b = kFirstBase; b <= kLastBase && b < n; b += 2) {
    auto base = base_band(b, cache);
    if (!base)
      continue;
    auto block = find_block(*base);
    if (!block || (n - b) % (2 * block->length) != 0)
      continue;
    if (auto t = realize(repeat_block(*base, *block, (n - b) / (2 * block->length))))
      return *t;
  }
  if (auto t = solve_alternating(n))
    return *t;
  throw ConstructionDefect("no even completion of the augmented template for n = " +
                           std::to_string(n));
}

namespace {

PartialCayleyTable bare_template(std::size_t n)
{
  PartialCayleyTable pt(n);
  for (Point x = 0; x < n; ++x)
    pt.set_symmetric(0, x, x);
  return pt;
}

// (i+j) mod n where i+j < n-k, everything else open.
PartialCayleyTable triangle_template(std::size_t n, std::size_t k)
{
  PartialCayleyTable pt = bare_template(n);
  for (Point i = 1; i < n; ++i)
    for (Point j = i; i + j + k < n; ++j)
      pt.set_symmetric(i, j, static_cast<Point>((i + j) % n));
  return pt;
}

constexpr std::uint64_t kAttemptNodes = 2'000'000;

std::optional<CayleyTable> solve_with_target(const PartialCayleyTable& pt, TargetGroup target,
                                             bool forbid_zero, Point odd_row)
{
  ZoneConstraints c;
  c.forbid_zero_on_antidiagonal = forbid_zero;
  if (target == TargetGroup::Alternating)
    c.row_parity = all_rows(pt.order(), Parity::Even);
  else {
    c.row_parity.assign(pt.order(), std::nullopt);
    c.row_parity[odd_row] = Parity::Odd;
  }
  c.accept = [target](const CayleyTable& t) { return accept_target(t, target); };
  c.node_limit = kAttemptNodes;
  auto res = complete_zone(pt, c);
  if (res.status == ZoneStatus::Solved)
    return res.table;
  return std::nullopt;
}

// Templates for orders below the tiling range, most structured first.
std::vector<std::pair<PartialCayleyTable, Point>> intermediate_templates(std::size_t n)
{
  std::vector<std::pair<PartialCayleyTable, Point>> out;
  auto attempt = [&](auto build, Point odd_row) {
    try {
      out.emplace_back(build(), odd_row);
    } catch (const CellConflict&) {
    }
  };
  if (n >= 13)
    attempt([&] { return build_template(n); }, 6);
  if (n >= 25)
    attempt([&] { return build_simplified_template(n, true); }, 3);
  if (n >= 9)
    attempt([&] { return build_simplified_template(n, false); }, 3);
  return out;
}

}  // namespace

CayleyTable construct_odd_loop(std::size_t n, TargetGroup target, const CacheOptions& cache)
{
  if (n % 2 == 0 || n < 5)
    throw InfeasibleTarget("odd construction needs odd n >= 5, got " + std::to_string(n));
  if (n == 5) {
    if (target == TargetGroup::Alternating)
      throw InfeasibleTarget(
          "no unbreakable loop of order 5 has M(G) = A_5: the only one has M(G) = S_5");
    auto t = smallest_unbreakable_loop(5, GroupKind::Symmetric);
    if (!t)
      throw ConstructionDefect("census of order 5 has no unbreakable loop");
    return *t;
  }
  if (n >= 21 && target == TargetGroup::Symmetric)
    return fill_symmetric(n);
  if (n >= kMinAltOrder)
    return fill_alternating(n, cache);

  const auto templates = intermediate_templates(n);
  std::optional<CayleyTable> t;
  for (const auto& [pt, odd_row] : templates)
    if ((t = solve_with_target(pt, target, true, odd_row)))
      return *t;
  // From 13 on the zone parity of a row decides its parity only if the
  // table agrees with the template, so keep the template and drop the
  // antidiagonal restriction before trying the triangle.
  auto relaxed = [&] {
    for (const auto& [pt, odd_row] : templates)
      if ((t = solve_with_target(pt, target, false, odd_row)))
        return true;
    return false;
  };
  if (n >= 13 && relaxed())
    return *t;
  for (std::size_t k = 2; k + 1 < n; ++k)
    if ((t = solve_with_target(triangle_template(n, k), target, true, 1)))
      return *t;
  if (n < 13 && relaxed())
    return *t;
  t = solve_with_target(bare_template(n), target, false, 1);
  if (!t)
    throw ConstructionDefect("no commutative unbreakable loop of order " + std::to_string(n) +
                             " with M(G) = " + (target == TargetGroup::Symmetric ? "S_n" : "A_n"));
  return *t;
}

}  // namespace loopforge
