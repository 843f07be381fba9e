#include "loopforge/zone_solver.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace loopforge {

namespace {

using Mask = std::uint64_t;

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept
  {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : key) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

constexpr std::size_t kMemoCap = std::size_t{1} << 22;

class ZoneSearch {
public:
  ZoneSearch(const PartialCayleyTable& pt, const ZoneConstraints& c);
  ZoneResult run();

private:
  enum class Outcome { Found, Fail, Tainted, Limit };

  Outcome dfs(std::size_t k);
  void assign(std::size_t k, Point v);
  void unassign(std::size_t k);
  bool consistent(std::size_t k) const;
  bool row_ok(Point r, std::size_t k) const;
  bool toggle_inversions(Point r, Point pos, Point v) const;
  std::vector<std::uint64_t> key(std::size_t k) const;
  Mask domain(std::size_t k) const
  {
    return allowed_[k] & missing_[free_[k].first] & missing_[free_[k].second];
  }

  const ZoneConstraints& c_;
  std::size_t n_;
  std::vector<Point> cells_;
  std::vector<std::pair<Point, Point>> free_;
  std::vector<Point> symbol_;         // compact index -> value
  std::vector<int> index_;            // value -> compact index or -1
  std::vector<Mask> missing_;         // per row, compact
  std::vector<Mask> allowed_;         // per free cell
  std::vector<std::vector<std::size_t>> row_cells_;
  std::vector<std::size_t> remaining_;
  std::vector<std::optional<Parity>> target_;
  std::vector<bool> odd_;             // inversion parity of the defined part of a row
  std::vector<std::vector<Point>> frontier_;
  std::unordered_set<std::vector<std::uint64_t>, KeyHash> memo_;
  std::uint64_t nodes_ = 0;
  std::optional<CayleyTable> solution_;
};

ZoneSearch::ZoneSearch(const PartialCayleyTable& pt, const ZoneConstraints& c)
    : c_(c), n_(pt.order()), cells_(pt.cells())
{
  if (!pt.is_symmetric())
    throw std::invalid_argument("zone completion needs a symmetric partial table");
  const std::size_t n = n_;
  for (Point i = 0; i < n; ++i)
    for (Point j = i; j < n; ++j)
      if (!pt.defined(i, j))
        free_.emplace_back(i, j);

  // Compact the alphabet to the values some open row still needs.
  std::vector<bool> needed(n, false);
  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  for (Point r = 0; r < n; ++r)
    for (Point x = 0; x < n; ++x)
      if (Point v = pt.at(r, x); v != PartialCayleyTable::kUndefined)
        present[r][v] = true;
  for (auto [i, j] : free_)
    for (Point v = 0; v < n; ++v)
      if (!present[i][v] || !present[j][v])
        needed[v] = true;
  index_.assign(n, -1);
  for (Point v = 0; v < n; ++v)
    if (needed[v]) {
      if (symbol_.size() == 64)
        throw std::invalid_argument("open cells need more than 64 distinct values");
      index_[v] = static_cast<int>(symbol_.size());
      symbol_.push_back(v);
    }

  missing_.assign(n, 0);
  for (Point r = 0; r < n; ++r)
    for (Point v = 0; v < n; ++v)
      if (!present[r][v] && index_[v] >= 0)
        missing_[r] |= Mask{1} << index_[v];

  Mask alphabet = ~Mask{0};
  if (c.alphabet) {
    alphabet = 0;
    for (Point v : *c.alphabet)
      if (v < n && index_[v] >= 0)
        alphabet |= Mask{1} << index_[v];
  }
  row_cells_.assign(n, {});
  allowed_.resize(free_.size());
  for (std::size_t k = 0; k < free_.size(); ++k) {
    auto [i, j] = free_[k];
    Mask m = alphabet;
    if (c.forbid_zero_on_antidiagonal && i + j == n && index_[0] >= 0)
      m &= ~(Mask{1} << index_[0]);
    if (auto it = c.forbidden.find({i, j}); it != c.forbidden.end())
      for (Point v : it->second)
        if (v < n && index_[v] >= 0)
          m &= ~(Mask{1} << index_[v]);
    allowed_[k] = m;
    row_cells_[i].push_back(k);
    if (i != j)
      row_cells_[j].push_back(k);
  }
  for (auto& rc : row_cells_)
    std::sort(rc.begin(), rc.end());

  remaining_.resize(n);
  for (Point r = 0; r < n; ++r)
    remaining_[r] = row_cells_[r].size();

  target_.assign(n, std::nullopt);
  for (std::size_t r = 0; r < n && r < c.row_parity.size(); ++r)
    target_[r] = c.row_parity[r];
  odd_.assign(n, false);
  for (Point r = 0; r < n; ++r) {
    if (!target_[r])
      continue;
    bool odd = false;
    for (Point x = 0; x < n; ++x)
      for (Point y = x + 1; y < n; ++y) {
        Point a = cells_[r * n + x];
        Point b = cells_[r * n + y];
        if (a != PartialCayleyTable::kUndefined && b != PartialCayleyTable::kUndefined && a > b)
          odd = !odd;
      }
    odd_[r] = odd;
  }

  // Row r is on the frontier at step k when it has open cells on both sides.
  frontier_.assign(free_.size() + 1, {});
  for (Point r = 0; r < n; ++r) {
    if (row_cells_[r].empty())
      continue;
    for (std::size_t k = row_cells_[r].front() + 1; k <= row_cells_[r].back(); ++k)
      frontier_[k].push_back(r);
  }
}

std::vector<std::uint64_t> ZoneSearch::key(std::size_t k) const
{
  const auto& rows = frontier_[k];
  std::vector<std::uint64_t> out;
  out.reserve(rows.size() + 2 + rows.size() / 64);
  out.push_back(k);
  std::uint64_t bits = 0;
  std::size_t used = 0;
  for (Point r : rows) {
    out.push_back(missing_[r]);
    if (target_[r]) {
      bits |= std::uint64_t{odd_[r]} << used;
      if (++used == 64) {
        out.push_back(bits);
        bits = 0;
        used = 0;
      }
    }
  }
  out.push_back(bits);
  return out;
}

bool ZoneSearch::toggle_inversions(Point r, Point pos, Point v) const
{
  const Point* row = cells_.data() + r * n_;
  std::size_t count = 0;
  for (Point x = 0; x < n_; ++x) {
    Point a = row[x];
    if (x == pos || a == PartialCayleyTable::kUndefined)
      continue;
    count += x < pos ? a > v : a < v;
  }
  return count & 1U;
}

void ZoneSearch::assign(std::size_t k, Point v)
{
  auto [i, j] = free_[k];
  const Mask bit = Mask{1} << index_[v];
  cells_[i * n_ + j] = v;
  cells_[j * n_ + i] = v;
  missing_[i] &= ~bit;
  missing_[j] &= ~bit;
  --remaining_[i];
  if (target_[i] && toggle_inversions(i, j, v))
    odd_[i] = !odd_[i];
  if (i != j) {
    --remaining_[j];
    if (target_[j] && toggle_inversions(j, i, v))
      odd_[j] = !odd_[j];
  }
}

void ZoneSearch::unassign(std::size_t k)
{
  auto [i, j] = free_[k];
  const Point v = cells_[i * n_ + j];
  const Mask bit = Mask{1} << index_[v];
  if (target_[i] && toggle_inversions(i, j, v))
    odd_[i] = !odd_[i];
  if (i != j && target_[j] && toggle_inversions(j, i, v))
    odd_[j] = !odd_[j];
  cells_[i * n_ + j] = PartialCayleyTable::kUndefined;
  cells_[j * n_ + i] = PartialCayleyTable::kUndefined;
  missing_[i] |= bit;
  missing_[j] |= bit;
  ++remaining_[i];
  if (i != j)
    ++remaining_[j];
}

bool ZoneSearch::row_ok(Point r, std::size_t k) const
{
  if (remaining_[r] == 0)
    return !target_[r] || (*target_[r] == Parity::Odd) == odd_[r];
  Mask reach = 0;
  for (std::size_t q : row_cells_[r]) {
    if (q <= k)
      continue;
    Mask d = domain(q);
    if (d == 0)
      return false;
    reach |= d;
  }
  return (reach & missing_[r]) == missing_[r];
}

bool ZoneSearch::consistent(std::size_t k) const
{
  auto [i, j] = free_[k];
  return row_ok(i, k) && (i == j || row_ok(j, k));
}

ZoneSearch::Outcome ZoneSearch::dfs(std::size_t k)
{
  if (k == free_.size()) {
    CayleyTable t(n_, cells_);
    if (c_.accept && !c_.accept(t))
      return Outcome::Tainted;
    solution_ = std::move(t);
    return Outcome::Found;
  }
  if (c_.node_limit && ++nodes_ > c_.node_limit)
    return Outcome::Limit;
  if (!c_.node_limit)
    ++nodes_;
  auto memo_key = key(k);
  if (memo_.contains(memo_key))
    return Outcome::Fail;

  bool tainted = false;
  for (Mask d = domain(k); d != 0; d &= d - 1) {
    const Point v = symbol_[std::countr_zero(d)];
    assign(k, v);
    if (consistent(k)) {
      Outcome o = dfs(k + 1);
      if (o == Outcome::Found || o == Outcome::Limit) {
        unassign(k);
        return o;
      }
      tainted |= o == Outcome::Tainted;
    }
    unassign(k);
  }
  if (tainted)
    return Outcome::Tainted;
  if (memo_.size() < kMemoCap)
    memo_.insert(std::move(memo_key));
  return Outcome::Fail;
}

ZoneResult ZoneSearch::run()
{
  ZoneResult result;
  // Fully specified rows with a parity target are checked up front, and so
  // are rows whose open cells cannot cover what they miss.
  for (Point r = 0; r < n_; ++r) {
    if (remaining_[r] == 0 && target_[r] && (*target_[r] == Parity::Odd) != odd_[r])
      return result;
    Mask reach = 0;
    for (std::size_t q : row_cells_[r])
      reach |= domain(q);
    if ((reach & missing_[r]) != missing_[r])
      return result;
  }
  Outcome o = dfs(0);
  result.nodes = nodes_;
  if (o == Outcome::Found) {
    result.status = ZoneStatus::Solved;
    result.table = std::move(solution_);
  } else if (o == Outcome::Limit) {
    result.status = ZoneStatus::LimitReached;
  }
  return result;
}

}  // namespace

ZoneResult complete_zone(const PartialCayleyTable& pt, const ZoneConstraints& c)
{
  return ZoneSearch(pt, c).run();
}

}  // namespace loopforge
