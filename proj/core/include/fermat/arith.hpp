#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fermat {

struct AdmissibilityResult {
  std::uint64_t d = 0;
  std::uint64_t p = 0;
  /// Smallest r >= 1 with d | p^r + 1, if any.
  std::optional<std::uint32_t> r;

  bool admissible() const { return r.has_value(); }
};

/// Scans r = 1 .. ord_d(p); p^r mod d is periodic with that period, so a miss
/// there is a miss for every r.
AdmissibilityResult minimal_admissible_r(std::uint64_t d, std::uint64_t p);

/// Number of tuples 1 <= y_i <= d_i - 1 with sum y_i / d_i an integer, by
/// enumeration. Guarded at prod(d_i - 1) <= 1e8.
std::int64_t i_count_direct(std::span<const std::uint32_t> d);

/// (-1)^s / D * sum_{m=1}^{D} prod_{d_i | m} (1 - d_i), D = lcm(d).
std::int64_t i_count_lcm(std::span<const std::uint32_t> d);

/// Inclusion-exclusion over the 2^s subsets, s <= 25.
std::int64_t i_count_inclusion_exclusion(std::span<const std::uint32_t> d);

/// Default route (lcm formula).
inline std::int64_t i_count(std::span<const std::uint32_t> d) { return i_count_lcm(d); }

/// Sun's criterion for I(d) = 0, valid for s > 2.
bool i_is_zero_sun(std::span<const std::uint32_t> d);

struct WeilBoundResult {
  std::uint64_t q = 0;
  std::uint32_t s = 0;
  std::vector<std::uint32_t> d;
  std::int64_t i_value = 0;
  /// q^{(s-2)/2} [ sqrt(q) prod(d_i - 1) - (sqrt(q) - 1) I ].
  double radius = 0.0;
  /// Set when q is a perfect square; the radius is then an integer.
  std::optional<std::int64_t> exact_radius;
  std::int64_t center = 0;  // q^{s-1}
  /// Integer endpoints; lower is clamped at 0.
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  /// Unclamped lower endpoint; may be negative.
  std::int64_t raw_lower = 0;

  bool exact() const { return exact_radius.has_value(); }
};

/// Weil interval for a_1 x_1^{d_1} + ... + a_s x_s^{d_s} = b over F_q, b != 0.
WeilBoundResult weil_bound(std::uint64_t q, std::span<const std::uint32_t> d);

/// Exact integer square root when v is a perfect square.
std::optional<std::uint64_t> exact_sqrt(std::uint64_t v);

/// v^e with an overflow check (throws too-large).
std::int64_t checked_pow(std::int64_t v, std::uint32_t e);

}  // namespace fermat
