#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "loopforge/partial_table.hpp"
#include "loopforge/zone_solver.hpp"

namespace loopforge {

enum class TargetGroup { Symmetric, Alternating };

std::string to_string(TargetGroup g);

/// A requested (order, group) pair for which no such loop exists.
class InfeasibleTarget : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A construction step that should always succeed did not.
class ConstructionDefect : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Open cells of the template for order n: n <= i+j <= n+5.
inline bool in_zone(std::size_t n, Point i, Point j)
{
  return i + j >= n && i + j <= n + 5;
}

/// Symmetric template for odd n >= 13: cells off the six-antidiagonal zone
/// follow i+j mod n, with the fixed overrides, the top right region (rows 1-5)
/// and the central triangle. Throws CellConflict naming two cells when the
/// regions collide (every n below 21).
PartialCayleyTable build_template(std::size_t n);

/// The template plus the extra rows that make every row through the central
/// triangle fully specified. Needs odd n >= 43.
PartialCayleyTable build_augmented_template(std::size_t n);

/// Used for orders below the template's range: everything off the zone as in
/// the template, rows 1 and 2 complete, all other zone cells open. With
/// `central_triangle` the triangle is pinned too. Needs odd n >= 9.
PartialCayleyTable build_simplified_template(std::size_t n, bool central_triangle);

/// Whether every cell outside the zone agrees with the template (rows 1 and
/// 2 as in the simplified template). False for even n or n < 9.
bool matches_template(const CayleyTable& t);

/// Parity of a sequence of six values that is a permutation of {0..5}.
Parity segment_parity(std::span<const Point> segment);

/// Parity of row i's zone segment [i,n-i..n-i+5]. For a template-consistent
/// table this equals the parity of L_i. Throws std::invalid_argument outside
/// 6 <= i <= n-2, for i in {p+2, p+4}, or if the segment is not a
/// permutation of {0..5}.
Parity zone_row_parity(const CayleyTable& t, Point i);

/// One zone row in band coordinates: cell d of top row i is [i, n-i+d].
using BandRow = std::array<Point, 6>;

/// Zone content of consecutive top rows, as stored in the cache:
///   zone-fragment n=<n> rows=<first>..<last>
/// followed by one line of six values per row.
struct ZoneFragment {
  std::size_t order = 0;
  Point first_row = 0;
  std::vector<BandRow> rows;

  friend bool operator==(const ZoneFragment&, const ZoneFragment&) = default;
};

std::string format_fragment(const ZoneFragment& f);
/// Throws ParseError on malformed input.
ZoneFragment parse_fragment(std::string_view text);

/// Rows first..last of the zone of an odd-order table.
ZoneFragment extract_band(const CayleyTable& t, Point first, Point last);

/// Writes a fragment's rows into a partial table (symmetrically).
void apply_fragment(PartialCayleyTable& pt, const ZoneFragment& f);

/// The 15 zone cells above row `cut` that share a column with rows at or
/// below it: row cut-k, offsets 0..5-k, for k = 1..5.
std::array<Point, 15> cut_state(const ZoneFragment& band, Point cut);

/// Rows [first, first + length) of a band whose cut states at both ends
/// agree, so the run can be repeated in place.
struct ZoneBlock {
  Point first = 0;
  Point length = 0;

  friend bool operator==(const ZoneBlock&, const ZoneBlock&) = default;
};

/// Shortest repeat of cut states with every involved row at or below
/// `min_row`, earliest first; nullopt if no state repeats.
std::optional<ZoneBlock> find_block(const ZoneFragment& band, Point min_row = 10);

/// Band of order band.order + 2 * copies * block.length with the block
/// inserted `copies` more times.
ZoneFragment repeat_block(const ZoneFragment& band, const ZoneBlock& block, std::size_t copies);

/// Where derived zone fragments are cached; nullopt disables the cache.
struct CacheOptions {
  std::optional<std::filesystem::path> dir;
};

/// Directory named by LOOPFORGE_CACHE, if set and non-empty.
CacheOptions cache_from_environment();

/// Commutative unbreakable loop with M(G) = S_n, for odd n >= 21.
CayleyTable fill_symmetric(std::size_t n);

/// Commutative unbreakable loop with M(G) = A_n, for odd n >= 43. Every row
/// is an even permutation.
CayleyTable fill_alternating(std::size_t n, const CacheOptions& cache = {});

/// Commutative unbreakable loop of odd order n with the requested
/// multiplication group; n = 5 yields the (noncommutative) order-5 loop.
/// Throws InfeasibleTarget for (5, Alternating), n < 5 and even n.
CayleyTable construct_odd_loop(std::size_t n, TargetGroup target, const CacheOptions& cache = {});

}  // namespace loopforge
