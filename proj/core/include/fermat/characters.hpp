#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

#include "fermat/field.hpp"

namespace fermat {

using ComplexValue = std::complex<double>;

/// exp(2*pi*i*num/den), with num reduced modulo den before the angle is formed.
ComplexValue root_of_unity(std::int64_t num, std::uint64_t den);

/// chi_d^j: the character sending g^k to exp(2*pi*i*j*k/d). Identity is the
/// declared pair (d, j); two characters with different d may coincide as maps.
class MultiplicativeCharacter {
 public:
  /// Requires d | q - 1 and d >= 1; j is reduced modulo d.
  MultiplicativeCharacter(FieldPtr ctx, std::uint32_t d, std::int64_t j);

  static MultiplicativeCharacter trivial(FieldPtr ctx) { return {std::move(ctx), 1, 0}; }

  std::uint32_t d() const { return d_; }
  std::uint32_t j() const { return j_; }
  const FieldPtr& context() const { return ctx_; }

  bool is_trivial() const { return j_ == 0; }
  /// Exact order as a map, d / gcd(d, j).
  std::uint32_t order() const;
  /// The exponent m with this character equal to chi_{q-1}^m.
  std::uint32_t exponent_in_group() const;

  /// 0 at x = 0, for every character including the trivial one.
  ComplexValue operator()(FieldElement x) const;

  MultiplicativeCharacter conj() const { return {ctx_, d_, -static_cast<std::int64_t>(j_)}; }
  MultiplicativeCharacter pow(std::int64_t k) const;

  /// Pointwise product, declared over lcm of the two moduli.
  friend MultiplicativeCharacter operator*(const MultiplicativeCharacter& a,
                                           const MultiplicativeCharacter& b);

  /// Same map (regardless of declared modulus).
  bool same_map(const MultiplicativeCharacter& other) const;

 private:
  FieldPtr ctx_;
  std::uint32_t d_;
  std::uint32_t j_;
};

ComplexValue char_eval(const MultiplicativeCharacter& chi, FieldElement x);

/// psi(x) = exp(2*pi*i*Tr(x)/p).
class AdditiveCharacter {
 public:
  explicit AdditiveCharacter(FieldPtr ctx) : ctx_(std::move(ctx)) {}
  ComplexValue operator()(FieldElement x) const;
  const FieldPtr& context() const { return ctx_; }

 private:
  FieldPtr ctx_;
};

/// 1 iff chi_d(a) = chi_d(b), evaluated exactly as (a/b)^{(q-1)/d} == 1.
int theta(const FieldContext& ctx, std::uint32_t d, FieldElement a, FieldElement b);

bool is_dth_power(const FieldContext& ctx, std::uint32_t d, FieldElement x);

/// Parses "chi:d:j".
MultiplicativeCharacter parse_character(const FieldPtr& ctx, std::string_view text);

void require_same_context(const FieldPtr& a, const FieldPtr& b);

}  // namespace fermat
