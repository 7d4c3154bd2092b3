#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fermat {

inline constexpr std::uint64_t kDefaultMaxFieldSize = std::uint64_t{1} << 20;

/// One element of F_q, stored as its base-p encoding: the digit of p^k is the
/// coefficient of x^k in the canonical polynomial representative. The encoding
/// is a bijection with the canonical coefficient vector, so equality of
/// encodings is equality of elements.
class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint32_t encoded) : value_(encoded) {}

  constexpr std::uint32_t encoded() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;

 private:
  std::uint32_t value_ = 0;
};

struct FieldParams {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t q = 0;
  /// Monic, ascending degree, length n + 1.
  std::vector<std::uint32_t> modulus;
};

struct FieldOptions {
  /// Explicit modulus (ascending coefficients, monic, degree n). When absent the
  /// first irreducible polynomial in lexicographic order is used.
  std::optional<std::vector<std::uint32_t>> modulus;
  /// Explicit primitive element (encoded). When absent the smallest encoding
  /// of multiplicative order q - 1 is used.
  std::optional<std::uint32_t> generator;
  std::uint64_t max_field_size = kDefaultMaxFieldSize;
};

/// A fully materialized F_{p^n}: modulus, primitive element g, discrete-log and
/// exponential tables, and the absolute trace of every element. Immutable after
/// construction.
class FieldContext {
 public:
  std::uint32_t p() const { return params_.p; }
  std::uint32_t n() const { return params_.n; }
  std::uint32_t q() const { return params_.q; }
  /// Order of the multiplicative group.
  std::uint32_t group_order() const { return params_.q - 1; }
  const FieldParams& params() const { return params_; }
  const std::vector<std::uint32_t>& modulus() const { return params_.modulus; }

  FieldElement zero() const { return FieldElement{0}; }
  FieldElement one() const { return FieldElement{1}; }
  FieldElement generator() const { return exp_table_.size() > 1 ? FieldElement{exp_table_[1]} : one(); }

  bool contains(FieldElement x) const { return x.encoded() < params_.q; }

  FieldElement add(FieldElement x, FieldElement y) const;
  FieldElement neg(FieldElement x) const;
  FieldElement sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }
  FieldElement mul(FieldElement x, FieldElement y) const;
  FieldElement inv(FieldElement x) const;
  FieldElement div(FieldElement x, FieldElement y) const { return mul(x, inv(y)); }
  /// Square-and-multiply; negative exponents are allowed for x != 0.
  FieldElement pow(FieldElement x, std::int64_t m) const;

  /// Index k in [0, q - 2] with g^k = x.
  std::uint32_t dlog(FieldElement x) const;
  /// g^k for any integer k.
  FieldElement exp(std::int64_t k) const;
  /// Absolute trace to F_p as an integer in [0, p).
  std::uint32_t trace(FieldElement x) const;

  FieldElement decode(std::uint64_t i) const;
  std::uint32_t encode(FieldElement x) const;
  std::vector<std::uint32_t> coefficients(FieldElement x) const;
  FieldElement from_coefficients(std::span<const std::uint32_t> coeffs) const;

  /// Accepts the base-p integer encoding ("5") or a power of the primitive
  /// element ("g^3", "g^-1").
  FieldElement parse(std::string_view text) const;

  const std::vector<std::uint32_t>& exp_table() const { return exp_table_; }
  const std::vector<std::uint32_t>& trace_table() const { return trace_table_; }

 private:
  friend std::shared_ptr<const FieldContext> build_field(std::uint32_t, std::uint32_t,
                                                         const FieldOptions&);
  FieldContext() = default;

  void check(FieldElement x) const;

  FieldParams params_;
  std::vector<std::uint32_t> exp_table_;    // g^k for k in [0, q - 2]
  std::vector<std::uint32_t> log_table_;    // log_table_[0] unused
  std::vector<std::uint32_t> trace_table_;
};

using FieldPtr = std::shared_ptr<const FieldContext>;

/// Builds F_{p^n}. Deterministic: equal inputs produce bit-identical contexts.
FieldPtr build_field(std::uint32_t p, std::uint32_t n, const FieldOptions& options = {});

/// Irreducibility over F_p by the x^{p^k} criterion. `poly` is ascending and
/// monic of degree >= 1.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

/// Reads the q cap from FERMAT_MAX_Q when set, otherwise the default.
std::uint64_t max_field_size_from_env();

}  // namespace fermat
