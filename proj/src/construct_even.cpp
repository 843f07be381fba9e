#include "loopforge/construct_even.hpp"

#include <algorithm>
#include <stdexcept>

#include "loopforge/loop_analysis.hpp"
#include "loopforge/perm_group.hpp"
#include "loopforge/search.hpp"

namespace loopforge {

namespace {

void require_even(std::size_t n, std::size_t minimum)
{
  if (n % 2 != 0 || n < minimum)
    throw std::invalid_argument("needs even n >= " + std::to_string(minimum) + ", got " +
                                std::to_string(n));
}

// Bipartite matching of open columns to missing symbols for one row.
class RowMatching {
public:
  RowMatching(std::size_t n, std::vector<std::vector<bool>> allowed)
      : n_(n), allowed_(std::move(allowed)), col_of_(n, kNone), sym_of_(n, kNone), fixed_(n, false)
  {
  }

  bool perfect()
  {
    for (Point j = 0; j < n_; ++j)
      if (sym_of_[j] == kNone) {
        std::vector<bool> seen(n_, false);
        if (!augment(j, seen))
          return false;
      }
    return true;
  }

  // Pins column j to symbol s if a perfect matching survives.
  bool pin(Point j, Point s)
  {
    if (!allowed_[j][s] || fixed_[j])
      return false;
    if (sym_of_[j] == s) {
      fixed_[j] = true;
      return true;
    }
    const Point old = sym_of_[j];
    const Point other = col_of_[s];  // column currently holding s
    if (other != kNone && fixed_[other])
      return false;
    const auto saved_col = col_of_;
    const auto saved_sym = sym_of_;
    col_of_[old] = kNone;
    if (other != kNone)
      sym_of_[other] = kNone;
    sym_of_[j] = s;
    col_of_[s] = j;
    fixed_[j] = true;
    if (other == kNone)
      return true;
    std::vector<bool> seen(n_, false);
    if (augment(other, seen))
      return true;
    col_of_ = saved_col;
    sym_of_ = saved_sym;
    fixed_[j] = false;
    return false;
  }

  Point symbol(Point j) const { return sym_of_[j]; }

private:
  static constexpr Point kNone = PartialCayleyTable::kUndefined;

  bool augment(Point j, std::vector<bool>& seen)
  {
    for (Point s = 0; s < n_; ++s) {
      if (!allowed_[j][s] || seen[s])
        continue;
      seen[s] = true;
      const Point holder = col_of_[s];
      if (holder == kNone || (!fixed_[holder] && augment(holder, seen))) {
        col_of_[s] = j;
        sym_of_[j] = s;
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  std::vector<std::vector<bool>> allowed_;
  std::vector<Point> col_of_;
  std::vector<Point> sym_of_;
  std::vector<bool> fixed_;
};

bool has_cycle(const Permutation& f, const std::vector<Point>& cycle)
{
  for (std::size_t k = 0; k < cycle.size(); ++k)
    if (cycle[k] >= f.degree() || f(cycle[k]) != cycle[(k + 1) % cycle.size()])
      return false;
  return true;
}

bool is_full_cycle(const Permutation& f)
{
  auto cycles = cycle_decomposition(f);
  return cycles.size() == 1 && cycles.front().size() == f.degree();
}

}  // namespace

PartialCayleyTable build_rectangle(std::size_t n)
{
  require_even(n, 10);
  const Point p = static_cast<Point>(n / 2);
  PartialCayleyTable pt(n);
  for (Point j = 0; j < n; ++j)
    pt.set(0, j, j);

  pt.set(1, 0, 1);
  for (Point j = 1; j <= p - 1; ++j)
    pt.set(1, j, p + j - 1);
  pt.set(1, p, 0);
  pt.set(1, p + 1, 2 * p - 1);
  for (Point k = 2; k <= p - 1; ++k)
    pt.set(1, p + k, p + 1 - k);

  for (Point i = 2; i <= p - 1; ++i) {
    pt.set(i, 0, i);
    for (Point j = 1; j <= i - 1; ++j)
      pt.set(i, j, 2 * p - (i - j));
    for (Point j = i; j <= p; ++j)
      pt.set(i, j, p + (j - i));
    for (Point k = 1; k <= i; ++k)
      pt.set(i, p + k, i - k);
    for (Point k = i + 1; k <= p - 1; ++k)
      pt.set(i, p + k, i + (p - k));
  }

  pt.set(p, 0, p);
  for (Point j = 1; j <= p - 1; ++j)
    pt.set(p, j, p + j);
  pt.set(p, p, p - 1);
  pt.set(p, p + 1, 0);
  for (Point k = 2; k <= p - 1; ++k)
    pt.set(p, p + k, p - k);
  return pt;
}

CayleyTable complete_rectangle(const PartialCayleyTable& pt, const std::vector<Point>& symbol_order)
{
  const std::size_t n = pt.order();
  std::vector<Point> order = symbol_order;
  if (order.empty())
    for (Point s = 0; s < n; ++s)
      order.push_back(s);
  if (order.size() != n || !is_bijection(order))
    throw std::invalid_argument("symbol order must be a permutation of {0..n-1}");

  std::size_t rows = 0;
  while (rows < n && pt.defined(static_cast<Point>(rows), 0))
    ++rows;
  for (Point i = 0; i < n; ++i)
    for (Point j = 0; j < n; ++j)
      if (pt.defined(i, j) != (i < rows))
        throw std::invalid_argument("defined cells are not a run of complete top rows");

  std::vector<Point> cells(pt.cells().begin(), pt.cells().begin() + rows * n);
  std::vector<std::vector<bool>> in_column(n, std::vector<bool>(n, false));
  for (Point i = 0; i < rows; ++i)
    for (Point j = 0; j < n; ++j)
      in_column[j][cells[i * n + j]] = true;

  for (std::size_t i = rows; i < n; ++i) {
    std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n));
    for (Point j = 0; j < n; ++j)
      for (Point s = 0; s < n; ++s)
        allowed[j][s] = !in_column[j][s];
    RowMatching m(n, std::move(allowed));
    if (!m.perfect())
      throw std::logic_error("latin rectangle row has no perfect matching");
    for (Point j = 0; j < n; ++j) {
      bool pinned = false;
      for (Point s : order)
        if ((pinned = m.pin(j, s)))
          break;
      if (!pinned)
        throw std::logic_error("matching repair failed");
    }
    for (Point j = 0; j < n; ++j) {
      cells.push_back(m.symbol(j));
      in_column[j][m.symbol(j)] = true;
    }
  }
  return CayleyTable(n, std::move(cells));
}

CayleyTable normalize_first_column(const CayleyTable& t)
{
  const std::size_t n = t.order();
  std::vector<Point> row_with(n, PartialCayleyTable::kUndefined);
  for (Point i = 0; i < n; ++i) {
    const Point v = t(i, 0);
    if (row_with[v] != PartialCayleyTable::kUndefined)
      throw std::invalid_argument("column 0 repeats " + std::to_string(v));
    row_with[v] = i;
  }
  std::vector<Point> cells;
  cells.reserve(n * n);
  for (Point j = 0; j < n; ++j) {
    auto r = t.row(row_with[j]);
    cells.insert(cells.end(), r.begin(), r.end());
  }
  return CayleyTable(n, std::move(cells));
}

CayleyTable construct_even_loop(std::size_t n)
{
  require_even(n, 6);
  if (n < 10) {
    auto t = smallest_unbreakable_loop(n, GroupKind::Symmetric);
    if (!t)
      throw std::logic_error("search found no unbreakable loop of order " + std::to_string(n));
    return *t;
  }
  auto t = normalize_first_column(complete_rectangle(build_rectangle(n)));
  auto cert = certify_even_generators(t);
  if (auto bad = cert.failure())
    throw std::logic_error("even construction certificate failed: " + *bad);
  if (!is_unbreakable(t))
    throw std::logic_error("even construction is not unbreakable for n = " + std::to_string(n));
  return t;
}

bool EvenCertificate::all_hold() const
{
  return !failure().has_value();
}

std::optional<std::string> EvenCertificate::failure() const
{
  for (const auto& c : claims)
    if (!c.holds)
      return c.claim;
  return std::nullopt;
}

Permutation even_relabeling(std::size_t n)
{
  require_even(n, 10);
  const Point p = static_cast<Point>(n / 2);
  std::vector<Point> f(n);
  f[0] = 0;
  f[1] = 2 * p - 2;
  f[p - 1] = 2 * p - 4;
  f[p] = 1;
  f[p + 1] = 2 * p - 1;
  for (Point k = 2; k <= p - 2; ++k) {
    f[k] = p + k - 3;
    f[p + k] = k;
  }
  // The one point the listed rule leaves out takes the one unused image.
  f[2 * p - 1] = 2 * p - 3;
  return Permutation(f);
}

EvenCertificate certify_even_generators(const CayleyTable& t)
{
  const std::size_t n = t.order();
  require_even(n, 10);
  if (!validate(t).is_loop() || t(0, 0) != 0)
    throw std::invalid_argument("certificate needs a loop with identity 0");
  const Point p = static_cast<Point>(n / 2);
  EvenCertificate cert;
  cert.order = n;
  auto claim = [&](std::string text, bool holds) {
    cert.claims.push_back({std::move(text), holds});
  };
  auto num = [](Point x) { return std::to_string(x); };

  const Permutation L1 = left_action(t, 1);
  const Permutation Lp = left_action(t, p);

  claim("L_1 contains (0 1 " + num(p) + ")", has_cycle(L1, {0, 1, p}));
  claim("L_1 contains (2 " + num(p + 1) + " " + num(2 * p - 1) + ")",
        has_cycle(L1, {2, p + 1, 2 * p - 1}));
  claim("L_p contains (0 " + num(p) + " " + num(p - 1) + " " + num(2 * p - 1) + " 1 " +
            num(p + 1) + ")",
        has_cycle(Lp, {0, p, p - 1, 2 * p - 1, 1, p + 1}));
  if (p % 2 == 0) {
    const Point q = p / 2;
    claim("L_1 contains (" + num(q + 1) + " " + num(3 * q) + ")", has_cycle(L1, {q + 1, 3 * q}));
    claim("L_p contains (" + num(q) + " " + num(3 * q) + ")", has_cycle(Lp, {q, 3 * q}));
  }
  claim("L_1 and L_p have opposite parity", parity(L1) != parity(Lp));

  const Permutation R = compose(power(L1, 3), Lp);
  claim("R = L_1^3 o L_p is an n-cycle", is_full_cycle(R));
  claim("R(0) = p, R(1) = p+1, R(2p-1) = 1", R(0) == p && R(1) == p + 1 && R(2 * p - 1) == 1);

  const Permutation P = power(L1, 4);
  const Permutation Q = power(Lp, 4);
  const Permutation S = compose(P, power(Q, 2));
  claim("P = L_1^4 = (0 1 p)(2 p+1 2p-1)",
        P == Permutation::from_cycles(n, {{0, 1, p}, {2, p + 1, 2 * p - 1}}));
  claim("Q = L_p^4 = (0 1 p-1)(p p+1 2p-1)",
        Q == Permutation::from_cycles(n, {{0, 1, p - 1}, {p, p + 1, 2 * p - 1}}));
  claim("S = P o Q^2 = (0 p-1 p 2 p+1)", S == Permutation::from_cycles(n, {{0, p - 1, p, 2, p + 1}}));

  const Permutation f = even_relabeling(n);
  const Permutation f_inv = f.inverse();
  std::vector<Point> phi(n);
  for (Point x = 0; x < n; ++x)
    phi[x] = (x + 1) % static_cast<Point>(n);
  claim("the relabeling maps R to (0 1 ... n-1)",
        compose(compose(f, R), f_inv) == Permutation(phi));
  const Permutation fS = compose(compose(f, S), f_inv);
  const Permutation expected =
      Permutation::from_cycles(n, {{0, 2 * p - 4, 1, p - 1, 2 * p - 1}});
  claim("the relabeling maps S to (0 2p-4 1 p-1 2p-1)", fS == expected);
  claim("(0 2p-4 1 p-1 2p-1) with (0 1 ... n-1) meets the 5-cycle criterion",
        piccard_symmetric(static_cast<Point>(n), {0, 2 * p - 4, 1, p - 1, 2 * p - 1}));

  const std::vector<Permutation> gens = {L1, Lp};
  claim("<L_1, L_p> has order n!", sgs_from_generators(n, gens).order() == factorial(n));
  return cert;
}

nlohmann::json certificate_to_json(const EvenCertificate& c)
{
  nlohmann::json claims = nlohmann::json::array();
  for (const auto& cl : c.claims)
    claims.push_back({{"claim", cl.claim}, {"holds", cl.holds}});
  return {{"schema", 1}, {"order", c.order}, {"all_hold", c.all_hold()}, {"claims", claims}};
}

}  // namespace loopforge
