#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "loopforge/partial_table.hpp"

namespace loopforge {

/// Rows 0..p of the even-order table, n = 2p with p >= 5. They form a
/// (p+1) x n latin rectangle with [i,0] = i.
PartialCayleyTable build_rectangle(std::size_t n);

/// Fills the missing bottom rows of a latin rectangle one at a time. Each
/// row is the lexicographically smallest completion under `symbol_order`
/// (ascending values when empty), found by repairing a perfect matching
/// between columns and missing symbols. Throws std::invalid_argument if the
/// defined cells are not a run of complete top rows.
CayleyTable complete_rectangle(const PartialCayleyTable& pt,
                               const std::vector<Point>& symbol_order = {});

/// Reorders rows so that [j,0] = j. Throws std::invalid_argument if column 0
/// repeats a value.
CayleyTable normalize_first_column(const CayleyTable& t);

/// Unbreakable loop of even order n >= 6 with M(G) = S_n. Orders 6 and 8 come
/// from search; larger orders from the rectangle. Throws std::invalid_argument
/// for odd n or n < 6.
CayleyTable construct_even_loop(std::size_t n);

struct CertificateClaim {
  std::string claim;
  bool holds = false;
};

/// The facts showing that L_1 and L_p generate S_n, checked on a table whose
/// top rows come from build_rectangle.
struct EvenCertificate {
  std::size_t order = 0;
  std::vector<CertificateClaim> claims;

  bool all_hold() const;
  /// First failing claim, if any.
  std::optional<std::string> failure() const;
};

/// Throws std::invalid_argument unless n is even, n >= 10 and t is a loop.
EvenCertificate certify_even_generators(const CayleyTable& t);

nlohmann::json certificate_to_json(const EvenCertificate& c);

/// The relabeling sending R = L_1^3 o L_p to (0 1 ... n-1). Exposed for tests.
Permutation even_relabeling(std::size_t n);

}  // namespace loopforge
