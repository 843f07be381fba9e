#include "loopforge/loop_analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopforge {

GroupDescriptor multiplication_group(const CayleyTable& t)
{
  const std::size_t n = t.order();
  const bool commutative = is_commutative(t);
  std::vector<Permutation> gens;
  gens.reserve(2 * n);
  for (Point a = 0; a < n; ++a) {
    auto l = left_action(t, a);
    if (!l.is_identity())
      gens.push_back(std::move(l));
  }
  if (!commutative) {
    for (Point a = 0; a < n; ++a) {
      auto r = right_action(t, a);
      if (!r.is_identity())
        gens.push_back(std::move(r));
    }
  }
  return GroupDescriptor::from_generators(n, gens);
}

std::vector<Point> subloop_closure(const CayleyTable& t, std::span<const Point> seed)
{
  const std::size_t n = t.order();
  std::vector<bool> member(n, false);
  std::vector<Point> elems;
  std::size_t done = 0;
  auto push = [&](Point x) {
    if (!member[x]) {
      member[x] = true;
      elems.push_back(x);
    }
  };
  for (Point s : seed) {
    if (s >= n)
      throw std::out_of_range("subloop_closure: seed element out of range");
    push(s);
  }
  while (done < elems.size()) {
    Point x = elems[done++];
    for (std::size_t k = 0; k < done; ++k) {
      Point y = elems[k];
      push(t(x, y));
      push(t(y, x));
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool is_unbreakable(const CayleyTable& t)
{
  auto v = validate(t);
  if (!v.is_loop())
    throw std::invalid_argument("is_unbreakable: table is not a loop");
  for (Point k = 0; k < t.order(); ++k) {
    if (k == *v.identity)
      continue;
    Point seed[] = {k};
    if (subloop_closure(t, seed).size() != t.order())
      return false;
  }
  return true;
}

bool is_commutative(const CayleyTable& t)
{
  for (Point a = 0; a < t.order(); ++a)
    for (Point b = a + 1; b < t.order(); ++b)
      if (t(a, b) != t(b, a))
        return false;
  return true;
}

bool is_associative(const CayleyTable& t)
{
  const Point n = static_cast<Point>(t.order());
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b) {
      Point ab = t(a, b);
      for (Point c = 0; c < n; ++c)
        if (t(ab, c) != t(a, t(b, c)))
          return false;
    }
  return true;
}

LoopReport analyze(const CayleyTable& t)
{
  LoopReport r;
  r.order = t.order();
  auto v = validate(t);
  r.is_latin = v.is_latin();
  r.is_loop = v.is_loop();
  r.witness = v.witness;
  if (!r.is_loop)
    return r;
  r.identity = v.identity;
  r.commutative = is_commutative(t);
  r.associative = is_associative(t);
  r.unbreakable = is_unbreakable(t);
  r.group = classify_group(multiplication_group(t));
  for (Point a = 0; a < t.order(); ++a)
    r.left_parities.push_back(parity(left_action(t, a)));
  if (!r.commutative)
    for (Point a = 0; a < t.order(); ++a)
      r.right_parities.push_back(parity(right_action(t, a)));
  return r;
}

namespace {

// Branch and bound over relabelings s with s(0) = 0. Cells of the relabeled
// table are produced in row-major order; a label is assigned greedily the
// first time an old element appears as a value, and the search branches
// only when a row or column label is needed before it has been assigned.
class CanonicalSearch {
public:
  CanonicalSearch(const CayleyTable& t, bool stop_at_smaller)
      : t_(t), n_(static_cast<Point>(t.order())), stop_at_smaller_(stop_at_smaller)
  {
    for (Point j = 0; j < n_; ++j)
      if (t(0, j) != j || t(j, 0) != j)
        throw std::invalid_argument("canonical form requires identity element 0");
    to_new_.assign(n_, kUnset);
    to_old_.assign(n_, kUnset);
    to_new_[0] = 0;
    to_old_[0] = 0;
    next_ = 1;
    if (stop_at_smaller_) {
      best_.assign(t.cells().begin(), t.cells().end());
      have_best_ = true;
    } else {
      best_.assign(static_cast<std::size_t>(n_) * n_, 0);
      for (Point j = 0; j < n_; ++j) {
        best_[j] = j;
        best_[static_cast<std::size_t>(j) * n_] = j;
      }
    }
  }

  void run()
  {
    if (n_ <= 2) {
      // Nothing to relabel beyond the fixed identity.
      if (!have_best_)
        best_.assign(t_.cells().begin(), t_.cells().end());
      return;
    }
    search(first_cell(), have_best_ ? State::Equal : State::Less);
  }

  bool found_smaller() const { return found_smaller_; }
  CayleyTable result() const { return CayleyTable(n_, best_); }

private:
  static constexpr Point kUnset = ~Point{0};
  enum class State { Equal, Less };

  std::size_t first_cell() const { return static_cast<std::size_t>(n_) + 1; }

  Point assign(Point old_elem)
  {
    to_new_[old_elem] = next_;
    to_old_[next_] = old_elem;
    trail_.push_back(old_elem);
    return next_++;
  }

  void undo_to(std::size_t mark)
  {
    while (trail_.size() > mark) {
      Point old_elem = trail_.back();
      trail_.pop_back();
      to_old_[to_new_[old_elem]] = kUnset;
      to_new_[old_elem] = kUnset;
      --next_;
    }
  }

  void search(std::size_t pos, State state)
  {
    const std::size_t total = static_cast<std::size_t>(n_) * n_;
    const std::size_t mark = trail_.size();
    while (pos < total) {
      Point i = static_cast<Point>(pos / n_);
      Point j = static_cast<Point>(pos % n_);
      if (j == 0) {
        ++pos;
        continue;
      }
      Point need = to_old_[i] == kUnset ? i : (to_old_[j] == kUnset ? j : kUnset);
      if (need != kUnset) {
        // `need` equals next_: labels are handed out in increasing order.
        for (Point x = 1; x < n_; ++x) {
          if (to_new_[x] != kUnset)
            continue;
          std::size_t inner = trail_.size();
          assign(x);
          search(pos, state);
          undo_to(inner);
          if (found_smaller_ && stop_at_smaller_)
            break;
          // After the first completed child the best table shares our prefix.
          state = State::Equal;
        }
        undo_to(mark);
        return;
      }
      Point v = t_(to_old_[i], to_old_[j]);
      Point label = to_new_[v] != kUnset ? to_new_[v] : assign(v);
      if (state == State::Equal) {
        if (label > best_[pos]) {
          undo_to(mark);
          return;
        }
        if (label < best_[pos]) {
          state = State::Less;
          found_smaller_ = true;
          if (stop_at_smaller_) {
            undo_to(mark);
            return;
          }
        }
      }
      if (state == State::Less)
        best_[pos] = label;
      ++pos;
    }
    have_best_ = true;
    undo_to(mark);
  }

  const CayleyTable& t_;
  Point n_;
  bool stop_at_smaller_;
  bool have_best_ = false;
  bool found_smaller_ = false;
  std::vector<Point> to_new_;
  std::vector<Point> to_old_;
  std::vector<Point> trail_;
  Point next_ = 1;
  std::vector<Point> best_;
};

}  // namespace

CayleyTable canonical_form(const CayleyTable& t)
{
  CanonicalSearch s(t, false);
  s.run();
  return s.result();
}

bool is_canonical(const CayleyTable& t)
{
  CanonicalSearch s(t, true);
  s.run();
  return !s.found_smaller();
}

}  // namespace loopforge
