#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/arith.hpp"
#include "fermat/field.hpp"

namespace fermat {

/// a_1 x_1^{d_1} + ... + a_s x_s^{d_s} = b over the field `ctx`.
struct HypersurfaceSpec {
  FieldPtr ctx;
  std::vector<std::uint32_t> d;
  std::vector<FieldElement> a;
  FieldElement b;

  std::size_t s() const { return d.size(); }
  /// s >= 2, d_i >= 2 with d_i | q - 1, a_i != 0, b != 0 (throws invalid-spec).
  void validate() const;
};

enum class CountMethod { kBruteforce, kCharsum, kFormula };

std::string_view to_string(CountMethod method);
CountMethod parse_count_method(std::string_view text);

struct CountResult {
  std::int64_t n_points = 0;
  CountMethod method = CountMethod::kBruteforce;
  /// Distance of the floating-point character sum from the reported integer.
  double residual = 0.0;
};

enum class BruteforceRoute { kAuto, kConvolution, kNaive };

/// Exact count. The convolution route folds the per-variable value
/// distributions over (F_q, +) and needs s q^2 <= 1e9; the naive route
/// enumerates F_q^s and needs q^s <= 1e8.
CountResult count_bruteforce(const HypersurfaceSpec& spec, BruteforceRoute route = BruteforceRoute::kAuto);

/// q^{s-1} plus the character-sum expansion over the box 0 < l_i < d_i, with
/// Jacobi sums taken from Gauss sums. Needs prod(d_i - 1) <= 1e7.
CountResult count_charsum(const HypersurfaceSpec& spec);

/// Closed form for (p, r)-admissible exponents with a common r and 2r | n.
/// Exact integer arithmetic.
CountResult count_formula(const HypersurfaceSpec& spec);

CountResult count_points(const HypersurfaceSpec& spec, CountMethod method);

/// Cost guards of each method, so callers can pick a feasible one.
bool bruteforce_feasible(const HypersurfaceSpec& spec);
bool charsum_feasible(const HypersurfaceSpec& spec);

struct CommonAdmissibility {
  /// Per-exponent minimal r (absent when not admissible).
  std::vector<std::optional<std::uint32_t>> per_exponent;
  std::optional<std::uint32_t> r;
  /// (-1)^{n / 2r}, defined when r exists and 2r | n.
  std::optional<int> epsilon;
  bool all_admissible = false;
};

CommonAdmissibility common_admissibility(const FieldContext& ctx, const std::vector<std::uint32_t>& d);

enum class Status { kMaximal, kMinimal, kNotAttained, kHypothesesNotMet };

std::string_view to_string(Status status);
Status parse_status(std::string_view text);

struct ClassificationResult {
  Status status = Status::kHypothesesNotMet;
  std::optional<std::uint32_t> r;
  std::optional<int> epsilon;
  std::vector<bool> theta_matches;
  /// Machine-readable codes: "s_equals_3", "gcd_at_most_2",
  /// "not_admissible:<i>", "no_common_r", "parity_2r_not_dividing_n",
  /// "n_over_2r_odd", "theta_mismatch:<i>", "count_off_endpoint"; <i> is the
  /// 1-based variable index.
  std::vector<std::string> reasons;
  WeilBoundResult bound;
  std::optional<CountResult> verified_count;
};

struct ClassifyOptions {
  /// Attach a count (charsum when feasible, else bruteforce) when possible.
  bool verify = true;
};

/// Decides maximality / minimality from the admissibility, parity and
/// power-residue conditions. Never throws for a valid spec.
ClassificationResult classify(const HypersurfaceSpec& spec, const ClassifyOptions& options = {});

enum class Attainment { kMaximalObserved, kMinimalObserved, kInterior };

std::string_view to_string(Attainment attainment);

struct AttainmentResult {
  Attainment kind = Attainment::kInterior;
  /// Set for odd n, where exact endpoint comparison is not defined.
  bool exact_comparison_unsupported = false;
};

/// Compares a count with the exact Weil endpoints (q a perfect square).
AttainmentResult attainment_check(const HypersurfaceSpec& spec, const CountResult& count);

}  // namespace fermat
