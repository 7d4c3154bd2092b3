#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fermat/characters.hpp"
#include "fermat/field.hpp"

namespace fermat {

struct GaussSumResult {
  ComplexValue value;
  std::uint32_t d = 1;
  std::uint32_t j = 0;
  std::uint32_t q = 0;
};

/// G(chi) = sum over x != 0 of psi(x) chi(x), summed directly in O(q).
GaussSumResult gauss_sum(const MultiplicativeCharacter& chi);

/// Gauss sums of chi_D^u for every u in [0, D) on one field. Construction
/// folds psi(g^k) by k mod D in O(q); each entry then costs O(D) and is cached
/// on first use, so a table must not be shared between threads.
class GaussSumTable {
 public:
  GaussSumTable(FieldPtr ctx, std::uint32_t modulus);

  std::uint32_t modulus() const { return modulus_; }
  ComplexValue operator[](std::uint64_t u) const;
  /// The character must factor through chi_D, i.e. its group exponent is a
  /// multiple of (q - 1) / D.
  ComplexValue of(const MultiplicativeCharacter& chi) const;

 private:
  FieldPtr ctx_;
  std::uint32_t modulus_;
  std::vector<ComplexValue> folded_;
  std::vector<ComplexValue> roots_;
  mutable std::vector<ComplexValue> cache_;
  mutable std::vector<bool> ready_;
};

/// Closed form for the quadratic Gauss sum over F_{p^n}, p odd.
ComplexValue quadratic_gauss_closed_form(std::uint32_t p, std::uint32_t n);

/// J_b by summing over b_1 + ... + b_s = b; terms with a zero b_i vanish.
/// Guarded at q^{s-1} <= 1e7.
ComplexValue jacobi_sum_direct(std::span<const MultiplicativeCharacter> chars, FieldElement b);

/// lambda_1(b)...lambda_s(b) * J_1, for b != 0.
ComplexValue jacobi_b_reduction(std::span<const MultiplicativeCharacter> chars, FieldElement b);

/// J_1 from Gauss sums; every factor must be nontrivial.
ComplexValue jacobi_from_gauss(std::span<const MultiplicativeCharacter> chars);

/// Expected |J| for nontrivial factors: q^{(s-1)/2}, or q^{(s-2)/2} when the
/// product character is trivial.
double jacobi_expected_modulus(std::span<const MultiplicativeCharacter> chars);

inline constexpr double kPurityTolerance = 1e-7;

struct PurityReport {
  bool is_pure = false;
  /// Smallest k >= 1 with z^k real, when found within the bound.
  std::optional<std::uint64_t> order;
  std::uint64_t search_bound = 0;
};

/// Smallest k in [1, k_max] with |Im(u^k)| < 1e-7, u = z/|z|.
PurityReport purity_order(ComplexValue z, std::uint64_t k_max);

struct GaussPuritySuite {
  std::uint32_t d = 0;
  /// reports[j - 1] describes G(chi_d^j), j = 1 .. d - 1.
  std::vector<PurityReport> reports;
  bool all_pure = true;
  std::optional<std::uint32_t> admissible_r;

  /// Both sides of the purity/admissibility equivalence agree.
  bool equivalence_holds() const { return all_pure == admissible_r.has_value(); }
};

/// Purity of G(chi_d^j) for j = 1 .. d - 1 with k_max = 4 d p, next to the
/// (p, r)-admissibility of d.
GaussPuritySuite gauss_purity_suite(const FieldPtr& ctx, std::uint32_t d);

struct DavenportHasseReport {
  /// Phase of prod_{j<m} G(lambda^{kj} chi) / G(chi^{m/d})^d, d = gcd(m, k).
  ComplexValue phase;
  /// Natural log of the ratio's modulus.
  double log_modulus = 0.0;
  PurityReport purity;
};

/// `lambda` must have exact order m; k >= 1. Purity bound 4 lcm(m, p, 2) gcd(m, k).
DavenportHasseReport davenport_hasse_check(const MultiplicativeCharacter& lambda, std::uint32_t m,
                                           std::uint64_t k, const MultiplicativeCharacter& chi);

struct IdentityCheck {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::uint64_t cases = 0;
  bool pass = true;
};

struct IdentitySuiteOptions {
  /// Cap on direct-summation work per Jacobi identity (terms summed).
  std::uint64_t direct_budget = 20'000'000;
  std::uint32_t davenport_hasse_cases = 200;
  std::uint64_t seed = 20240601;
};

/// Runs every character-sum identity on one field and reports the worst
/// residual of each.
std::vector<IdentityCheck> run_identity_suite(const FieldPtr& ctx, const IdentitySuiteOptions& options = {});

}  // namespace fermat
