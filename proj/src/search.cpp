#include "loopforge/search.hpp"

#include <atomic>
#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "loopforge/table_io.hpp"

namespace loopforge {

namespace {

using Mask = std::uint64_t;

// Row-major backtracking over reduced tables: row 0 and column 0 are the
// identity, every other cell is tried in ascending order.
class ReducedSquares {
public:
  ReducedSquares(std::size_t n, bool nonzero_diagonal)
      : n_(n), nonzero_diagonal_(nonzero_diagonal), cells_(n * n), row_(n), col_(n)
  {
    for (Point x = 0; x < n; ++x) {
      place(0, x, x);
      if (x)
        place(x, 0, x);
    }
  }

  std::size_t order() const { return n_; }
  const std::vector<Point>& cells() const { return cells_; }

  // Visits every completion of rows first_row.. (rows above already set).
  // The visitor returns false to stop; walk returns false if stopped.
  template <typename Visit>
  bool walk(std::size_t first_row, std::size_t last_row, Visit&& visit)
  {
    if (first_row > last_row || first_row >= n_)
      return visit();
    return step(first_row * n_ + 1, (last_row + 1) * n_, visit);
  }

  void set_row(Point i, std::span<const Point> values)
  {
    for (Point j = 1; j < n_; ++j)
      place(i, j, values[j]);
  }

  void clear_row(Point i)
  {
    for (Point j = 1; j < n_; ++j)
      unplace(i, j);
  }

private:
  void place(Point i, Point j, Point v)
  {
    cells_[i * n_ + j] = v;
    row_[i] |= Mask{1} << v;
    col_[j] |= Mask{1} << v;
  }

  void unplace(Point i, Point j)
  {
    const Point v = cells_[i * n_ + j];
    row_[i] &= ~(Mask{1} << v);
    col_[j] &= ~(Mask{1} << v);
  }

  template <typename Visit>
  bool step(std::size_t k, std::size_t end, Visit& visit)
  {
    if (k == end)
      return visit();
    const Point i = static_cast<Point>(k / n_), j = static_cast<Point>(k % n_);
    if (j == 0)
      return step(k + 1, end, visit);
    Mask free = ~(row_[i] | col_[j]) & ((Mask{1} << n_) - 1);
    if (nonzero_diagonal_ && i == j)
      free &= ~Mask{1};
    for (; free; free &= free - 1) {
      const Point v = static_cast<Point>(std::countr_zero(free));
      place(i, j, v);
      const bool go_on = step(k + 1, end, visit);
      unplace(i, j);
      if (!go_on)
        return false;
    }
    return true;
  }

  std::size_t n_;
  bool nonzero_diagonal_;
  std::vector<Point> cells_;
  std::vector<Mask> row_;
  std::vector<Mask> col_;
};

void check_order(std::size_t n, const EnumerationOptions& opts)
{
  if (n == 0)
    throw std::invalid_argument("order must be positive");
  if (n > 7 && !opts.allow_long)
    throw std::invalid_argument("enumeration of order " + std::to_string(n) +
                                " is out of desk scale; pass the long-run flag to force it");
  if (n > 8)
    throw std::invalid_argument("enumeration supports orders up to 8");
}

using Prefix = std::vector<Point>;  // rows 1 and 2, cells 1..n-1 of each

std::vector<Prefix> row_choices(ReducedSquares& rs, Point row)
{
  const std::size_t n = rs.order();
  std::vector<Prefix> out;
  rs.walk(row, row, [&] {
    out.emplace_back(rs.cells().begin() + row * n, rs.cells().begin() + (row + 1) * n);
    return true;
  });
  return out;
}

// Runs `work(item_index, squares)` for each second-row choice below `row1`,
// with up to `jobs` threads, then `done(item_index)` in index order.
template <typename Work, typename Done>
void for_each_item(std::size_t n, const Prefix& row1, const std::vector<Prefix>& items,
                   unsigned jobs, Work&& work, Done&& done)
{
  auto run = [&](std::size_t idx, ReducedSquares& rs) {
    rs.set_row(2, items[idx]);
    work(idx, rs);
    rs.clear_row(2);
  };
  if (jobs <= 1 || items.size() <= 1) {
    ReducedSquares rs(n, false);
    rs.set_row(1, row1);
    for (std::size_t idx = 0; idx < items.size(); ++idx) {
      run(idx, rs);
      if (!done(idx))
        return;
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      ReducedSquares rs(n, false);
      rs.set_row(1, row1);
      for (std::size_t idx; (idx = next++) < items.size();)
        run(idx, rs);
    });
  for (auto& th : pool)
    th.join();
  for (std::size_t idx = 0; idx < items.size(); ++idx)
    if (!done(idx))
      return;
}

struct Cursor {
  Prefix last;  // row 1 followed by row 2 of the last finished item
  Census partial;
};

void write_cursor(const std::filesystem::path& path, std::size_t n, const Cursor& c)
{
  std::ostringstream out;
  out << "cursor n=" << n << "\nprefix";
  for (Point v : c.last)
    out << ' ' << v;
  out << "\nclasses " << c.partial.classes << "\nunbreakable " << c.partial.unbreakable
      << "\nunbreakable_groups " << c.partial.unbreakable_groups << "\ncommutative_unbreakable "
      << c.partial.commutative_unbreakable << '\n';
  for (const auto& [key, count] : c.partial.by_group)
    out << "group " << key << ' ' << count << '\n';
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp);
    f << out.str();
    if (!f)
      throw std::runtime_error("cannot write cursor file " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Cursor> read_cursor(const std::filesystem::path& path, std::size_t n)
{
  std::ifstream in(path);
  if (!in)
    return std::nullopt;
  Cursor c;
  c.partial.order = n;
  std::string line;
  if (!std::getline(in, line) || line != "cursor n=" + std::to_string(n))
    throw std::invalid_argument("cursor file " + path.string() + " is not for order " +
                                std::to_string(n));
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "prefix") {
      for (Point v; ls >> v;)
        c.last.push_back(v);
    } else if (tag == "classes") {
      ls >> c.partial.classes;
    } else if (tag == "unbreakable") {
      ls >> c.partial.unbreakable;
    } else if (tag == "unbreakable_groups") {
      ls >> c.partial.unbreakable_groups;
    } else if (tag == "commutative_unbreakable") {
      ls >> c.partial.commutative_unbreakable;
    } else if (tag == "group") {
      std::string key;
      std::uint64_t count = 0;
      ls >> key >> count;
      c.partial.by_group[key] = count;
    }
  }
  return c;
}

// Small orders have no second-row prefix; they are enumerated directly.
template <typename Leaf>
void tiny_orders(std::size_t n, Leaf&& leaf)
{
  ReducedSquares rs(n, false);
  rs.walk(1, n - 1, [&] { return leaf(rs.cells()); });
}

}  // namespace

void enumerate_loops(std::size_t n, const std::function<bool(const CayleyTable&)>& emit,
                     const EnumerationOptions& opts)
{
  check_order(n, opts);
  if (n <= 3) {
    tiny_orders(n, [&](const std::vector<Point>& cells) {
      CayleyTable t(n, cells);
      return !is_canonical(t) || emit(t);
    });
    return;
  }
  ReducedSquares top(n, false);
  bool stopped = false;
  for (const Prefix& row1 : row_choices(top, 1)) {
    top.set_row(1, row1);
    const auto items = row_choices(top, 2);
    top.clear_row(1);
    std::vector<std::vector<CayleyTable>> found(items.size());
    for_each_item(
        n, row1, items, opts.jobs,
        [&](std::size_t idx, ReducedSquares& rs) {
          rs.walk(3, n - 1, [&] {
            CayleyTable t(n, rs.cells());
            if (is_canonical(t))
              found[idx].push_back(std::move(t));
            return true;
          });
        },
        [&](std::size_t idx) {
          for (const auto& t : found[idx])
            if (!emit(t)) {
              stopped = true;
              return false;
            }
          found[idx].clear();
          return true;
        });
    if (stopped)
      return;
  }
}

std::string group_key(const GroupClass& g)
{
  switch (g.kind) {
  case GroupKind::Symmetric:
    return "Symmetric";
  case GroupKind::Alternating:
    return "Alternating";
  case GroupKind::Other:
    break;
  }
  return "Other(" + g.order.str() + ")";
}

void Census::add(const LoopReport& r)
{
  ++classes;
  if (!r.unbreakable)
    return;
  if (r.associative) {
    ++unbreakable_groups;
    return;
  }
  ++unbreakable;
  if (r.group)
    ++by_group[group_key(*r.group)];
  if (r.commutative)
    ++commutative_unbreakable;
}

void Census::merge(const Census& other)
{
  classes += other.classes;
  unbreakable += other.unbreakable;
  unbreakable_groups += other.unbreakable_groups;
  commutative_unbreakable += other.commutative_unbreakable;
  for (const auto& [key, count] : other.by_group)
    by_group[key] += count;
}

nlohmann::json census_to_json(const Census& c)
{
  return {{"schema", kSchemaVersion},
          {"order", c.order},
          {"classes", c.classes},
          {"unbreakable", c.unbreakable},
          {"unbreakable_groups", c.unbreakable_groups},
          {"commutative_unbreakable", c.commutative_unbreakable},
          {"by_group", c.by_group}};
}

Census census(std::size_t n, const EnumerationOptions& opts)
{
  check_order(n, opts);
  Census total;
  total.order = n;
  if (n <= 3) {
    enumerate_loops(n, [&](const CayleyTable& t) {
      total.add(analyze(t));
      return true;
    });
    return total;
  }

  std::optional<Cursor> resume;
  if (opts.cursor)
    resume = read_cursor(*opts.cursor, n);
  if (resume)
    total = resume->partial;

  ReducedSquares top(n, false);
  for (const Prefix& row1 : row_choices(top, 1)) {
    top.set_row(1, row1);
    auto items = row_choices(top, 2);
    top.clear_row(1);
    auto key_of = [&](std::size_t idx) {
      Prefix k = row1;
      k.insert(k.end(), items[idx].begin(), items[idx].end());
      return k;
    };
    if (resume) {
      // Drop items at or before the saved prefix.
      std::erase_if(items, [&](const Prefix& row2) {
        Prefix k = row1;
        k.insert(k.end(), row2.begin(), row2.end());
        return k <= resume->last;
      });
    }
    std::vector<Census> part(items.size());
    for_each_item(
        n, row1, items, opts.jobs,
        [&](std::size_t idx, ReducedSquares& rs) {
          rs.walk(3, n - 1, [&] {
            CayleyTable t(n, rs.cells());
            if (is_canonical(t))
              part[idx].add(analyze(t));
            return true;
          });
        },
        [&](std::size_t idx) {
          total.merge(part[idx]);
          if (opts.cursor)
            write_cursor(*opts.cursor, n, Cursor{key_of(idx), total});
          return true;
        });
  }
  return total;
}

std::optional<CayleyTable> smallest_unbreakable_loop(std::size_t n, GroupKind kind)
{
  if (n < 2 || n > 63)
    throw std::invalid_argument("order out of range for search");
  ReducedSquares rs(n, true);  // a*a = 0 makes {0,a} a subloop
  std::optional<CayleyTable> hit;
  rs.walk(1, n - 1, [&] {
    CayleyTable t(n, rs.cells());
    if (!is_unbreakable(t) || is_associative(t))
      return true;
    if (classify_group(multiplication_group(t)).kind != kind)
      return true;
    hit = std::move(t);
    return false;
  });
  return hit;
}

}  // namespace loopforge
