#include "fermat/characters.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "fermat/error.hpp"
#include "fermat/numtheory.hpp"

namespace fermat {

ComplexValue root_of_unity(std::int64_t num, std::uint64_t den) {
  const auto r = static_cast<std::uint64_t>(floor_mod(num, static_cast<std::int64_t>(den)));
  if (r == 0) return {1.0, 0.0};
  // Exact values at the quarter turns keep real results real.
  if (4 * r == den) return {0.0, 1.0};
  if (2 * r == den) return {-1.0, 0.0};
  if (4 * r == 3 * den) return {0.0, -1.0};
  const long double angle =
      2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) / static_cast<long double>(den);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

void require_same_context(const FieldPtr& a, const FieldPtr& b) {
  if (a.get() != b.get()) fail(ErrorCode::kContextMismatch, "characters bound to different fields");
}

MultiplicativeCharacter::MultiplicativeCharacter(FieldPtr ctx, std::uint32_t d, std::int64_t j)
    : ctx_(std::move(ctx)), d_(d), j_(0) {
  if (!ctx_) fail(ErrorCode::kInvalidArgument, "character needs a field");
  if (d == 0 || ctx_->group_order() % d != 0) {
    fail(ErrorCode::kNotDivisor,
         std::to_string(d) + " does not divide q - 1 = " + std::to_string(ctx_->group_order()));
  }
  j_ = static_cast<std::uint32_t>(floor_mod(j, d));
}

std::uint32_t MultiplicativeCharacter::order() const {
  return d_ / std::gcd(d_, j_ == 0 ? d_ : j_);
}

std::uint32_t MultiplicativeCharacter::exponent_in_group() const {
  return static_cast<std::uint32_t>(std::uint64_t{j_} * (ctx_->group_order() / d_) %
                                    ctx_->group_order());
}

ComplexValue MultiplicativeCharacter::operator()(FieldElement x) const {
  if (!ctx_->contains(x)) fail(ErrorCode::kContextMismatch, "element is not in the character's field");
  if (x.is_zero()) return {0.0, 0.0};
  const std::uint64_t k = ctx_->dlog(x);
  return root_of_unity(static_cast<std::int64_t>(mul_mod(j_, k, d_)), d_);
}

MultiplicativeCharacter MultiplicativeCharacter::pow(std::int64_t k) const {
  const std::int64_t kk = floor_mod(k, d_);
  return {ctx_, d_, static_cast<std::int64_t>(mul_mod(j_, static_cast<std::uint64_t>(kk), d_))};
}

MultiplicativeCharacter operator*(const MultiplicativeCharacter& a, const MultiplicativeCharacter& b) {
  require_same_context(a.ctx_, b.ctx_);
  const std::uint64_t l = std::lcm<std::uint64_t>(a.d_, b.d_);
  const std::uint64_t j = (std::uint64_t{a.j_} * (l / a.d_) + std::uint64_t{b.j_} * (l / b.d_)) % l;
  return {a.ctx_, static_cast<std::uint32_t>(l), static_cast<std::int64_t>(j)};
}

bool MultiplicativeCharacter::same_map(const MultiplicativeCharacter& other) const {
  return ctx_.get() == other.ctx_.get() && exponent_in_group() == other.exponent_in_group();
}

ComplexValue char_eval(const MultiplicativeCharacter& chi, FieldElement x) { return chi(x); }

ComplexValue AdditiveCharacter::operator()(FieldElement x) const {
  return root_of_unity(ctx_->trace(x), ctx_->p());
}

int theta(const FieldContext& ctx, std::uint32_t d, FieldElement a, FieldElement b) {
  if (d == 0 || ctx.group_order() % d != 0) {
    fail(ErrorCode::kNotDivisor, std::to_string(d) + " does not divide q - 1");
  }
  if (a.is_zero() || b.is_zero()) fail(ErrorCode::kZeroArgument, "theta needs nonzero arguments");
  const FieldElement ratio = ctx.div(a, b);
  return ctx.pow(ratio, ctx.group_order() / d) == ctx.one() ? 1 : 0;
}

bool is_dth_power(const FieldContext& ctx, std::uint32_t d, FieldElement x) {
  return theta(ctx, d, x, ctx.one()) == 1;
}

MultiplicativeCharacter parse_character(const FieldPtr& ctx, std::string_view text) {
  auto bad = [&] { fail(ErrorCode::kInvalidArgument, "expected chi:d:j, got \"" + std::string(text) + "\""); };
  if (!text.starts_with("chi:")) bad();
  std::string_view rest = text.substr(4);
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos) bad();
  std::uint32_t d = 0;
  std::int64_t j = 0;
  const auto ds = rest.substr(0, colon), js = rest.substr(colon + 1);
  const auto r1 = std::from_chars(ds.data(), ds.data() + ds.size(), d);
  const auto r2 = std::from_chars(js.data(), js.data() + js.size(), j);
  if (ds.empty() || js.empty() || r1.ec != std::errc{} || r1.ptr != ds.data() + ds.size() ||
      r2.ec != std::errc{} || r2.ptr != js.data() + js.size()) {
    bad();
  }
  return {ctx, d, j};
}

}  // namespace fermat
