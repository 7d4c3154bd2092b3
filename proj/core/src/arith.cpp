#include "fermat/arith.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "fermat/error.hpp"
#include "fermat/numtheory.hpp"

namespace fermat {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kDirectEnumerationLimit = 100'000'000;
constexpr std::uint64_t kLcmSweepLimit = 1'000'000'000;

i128 checked_mul(i128 a, i128 b) {
  i128 r = 0;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::kTooLarge, "integer overflow");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r = 0;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::kTooLarge, "integer overflow");
  return r;
}

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) fail(ErrorCode::kTooLarge, "result exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

void require_exponents(std::span<const std::uint32_t> d) {
  if (d.empty()) fail(ErrorCode::kInvalidArgument, "need at least one exponent");
  for (const auto di : d) {
    if (di < 2) fail(ErrorCode::kInvalidArgument, "every d_i must be >= 2");
  }
}

std::uint64_t checked_lcm(std::span<const std::uint32_t> d) {
  u128 l = 1;
  for (const auto di : d) {
    l = l / std::gcd<std::uint64_t>(static_cast<std::uint64_t>(l), di) * di;
    if (l > UINT64_MAX / 2) fail(ErrorCode::kTooLarge, "lcm of exponents overflows");
  }
  return static_cast<std::uint64_t>(l);
}

u128 isqrt128(u128 v) {
  auto r = static_cast<u128>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

std::optional<std::uint64_t> exact_sqrt(std::uint64_t v) {
  const auto r = static_cast<std::uint64_t>(isqrt128(v));
  if (r * r == v) return r;
  return std::nullopt;
}

std::int64_t checked_pow(std::int64_t v, std::uint32_t e) {
  i128 r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r = checked_mul(r, v);
  return narrow(r);
}

AdmissibilityResult minimal_admissible_r(std::uint64_t d, std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (d < 1) fail(ErrorCode::kInvalidArgument, "d must be >= 1");
  if (std::gcd(d, p) != 1) fail(ErrorCode::kPDividesD, std::to_string(p) + " divides " + std::to_string(d));
  AdmissibilityResult out{d, p, std::nullopt};
  std::uint64_t power = p % d;
  for (std::uint32_t r = 1;; ++r) {
    if ((power + 1) % d == 0) {
      out.r = r;
      return out;
    }
    if (power % d == 1 % d) return out;  // one full period of p^r mod d
    power = mul_mod(power, p, d);
  }
}

std::int64_t i_count_direct(std::span<const std::uint32_t> d) {
  require_exponents(d);
  i128 box = 1;
  for (const auto di : d) {
    box = checked_mul(box, di - 1);
    if (box > kDirectEnumerationLimit) fail(ErrorCode::kTooLarge, "enumeration box exceeds 1e8");
  }
  const std::uint64_t big_d = checked_lcm(d);
  std::vector<std::uint64_t> weight(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) weight[i] = big_d / d[i];

  // Odometer over y in [1, d_i - 1]^s keeping sum y_i * D/d_i mod D.
  std::vector<std::uint32_t> y(d.size(), 1);
  std::uint64_t sum = 0;
  for (const auto w : weight) sum = (sum + w) % big_d;
  std::int64_t count = 0;
  while (true) {
    if (sum == 0) ++count;
    std::size_t i = 0;
    for (; i < d.size(); ++i) {
      if (y[i] + 1 < d[i]) {
        ++y[i];
        sum = (sum + weight[i]) % big_d;
        break;
      }
      // wrap y_i from d_i - 1 back to 1
      sum = (sum + big_d - mul_mod(d[i] - 2, weight[i], big_d)) % big_d;
      y[i] = 1;
    }
    if (i == d.size()) break;
  }
  return count;
}

std::int64_t i_count_lcm(std::span<const std::uint32_t> d) {
  require_exponents(d);
  const std::uint64_t big_d = checked_lcm(d);
  if (big_d > kLcmSweepLimit / d.size()) fail(ErrorCode::kTooLarge, "lcm sweep exceeds 1e9 steps");
  i128 total = 0;
  for (std::uint64_t m = 1; m <= big_d; ++m) {
    i128 prod = 1;
    for (const auto di : d) {
      if (m % di == 0) prod = checked_mul(prod, 1 - static_cast<i128>(di));
    }
    total = checked_add(total, prod);
  }
  if (d.size() % 2 == 1) total = -total;
  if (total % static_cast<i128>(big_d) != 0) {
    fail(ErrorCode::kNonIntegralResult, "lcm sum is not divisible by D");
  }
  const i128 value = total / static_cast<i128>(big_d);
  if (value < 0) fail(ErrorCode::kNonIntegralResult, "negative count from lcm formula");
  return narrow(value);
}

std::int64_t i_count_inclusion_exclusion(std::span<const std::uint32_t> d) {
  require_exponents(d);
  if (d.size() > 25) fail(ErrorCode::kTooManyVariables, "inclusion-exclusion supports s <= 25");
  const std::size_t s = d.size();
  i128 inner = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
    // prod(d)/lcm(d) over the subset grows by gcd(lcm, d_i) per added element.
    i128 ratio = 1;
    u128 l = 1;
    int size = 0;
    for (std::size_t i = 0; i < s; ++i) {
      if (!(mask >> i & 1)) continue;
      ++size;
      const std::uint64_t g = std::gcd<std::uint64_t>(static_cast<std::uint64_t>(l), d[i]);
      ratio = checked_mul(ratio, g);
      l = l / g * d[i];
      if (l > UINT64_MAX / 2) fail(ErrorCode::kTooLarge, "subset lcm overflows");
    }
    inner = checked_add(inner, size % 2 == 0 ? ratio : -ratio);
  }
  i128 value = checked_add(1, inner);
  if (s % 2 == 1) value = -value;
  return narrow(value);
}

bool i_is_zero_sun(std::span<const std::uint32_t> d) {
  if (d.size() <= 2) fail(ErrorCode::kSTooSmall, "Sun's criterion needs s > 2");
  require_exponents(d);
  const std::size_t s = d.size();
  // (a) some d_i coprime to the product of the others
  for (std::size_t i = 0; i < s; ++i) {
    bool coprime = true;
    for (std::size_t j = 0; j < s && coprime; ++j) {
      if (j != i && std::gcd(d[i], d[j]) != 1) coprime = false;
    }
    if (coprime) return true;
  }
  // (b) odd number of even entries, halves pairwise coprime, evens coprime to odds
  std::vector<std::uint32_t> evens, odds;
  for (const auto di : d) (di % 2 == 0 ? evens : odds).push_back(di);
  if (evens.size() % 2 == 0) return false;
  for (std::size_t i = 0; i < evens.size(); ++i) {
    for (std::size_t j = i + 1; j < evens.size(); ++j) {
      if (std::gcd(evens[i] / 2, evens[j] / 2) != 1) return false;
    }
    for (const auto o : odds) {
      if (std::gcd(evens[i], o) != 1) return false;
    }
  }
  return true;
}

WeilBoundResult weil_bound(std::uint64_t q, std::span<const std::uint32_t> d) {
  if (d.size() < 2) fail(ErrorCode::kInvalidArgument, "the Weil bound needs s >= 2");
  require_exponents(d);
  for (const auto di : d) {
    if ((q - 1) % di != 0) {
      fail(ErrorCode::kNotDivisor, std::to_string(di) + " does not divide q - 1 = " + std::to_string(q - 1));
    }
  }
  WeilBoundResult out;
  out.q = q;
  out.s = static_cast<std::uint32_t>(d.size());
  out.d.assign(d.begin(), d.end());
  out.i_value = i_count(d);

  i128 prod = 1;
  for (const auto di : d) prod = checked_mul(prod, di - 1);
  const i128 i_val = out.i_value;
  const std::uint32_t h = out.s - 2;
  const auto qq = static_cast<std::int64_t>(q);

  // radius = alpha + beta * sqrt(q) with integers alpha, beta >= 0.
  i128 alpha = 0, beta = 0;
  if (h % 2 == 0) {
    const i128 scale = checked_pow(qq, h / 2);
    beta = checked_mul(scale, prod - i_val);
    alpha = checked_mul(scale, i_val);
  } else {
    const i128 scale = checked_pow(qq, (h - 1) / 2);
    alpha = checked_mul(checked_mul(scale, prod - i_val), qq);
    beta = checked_mul(scale, i_val);
  }
  out.center = checked_pow(qq, out.s - 1);

  i128 floor_radius = 0;
  if (const auto root = exact_sqrt(q)) {
    floor_radius = checked_add(alpha, checked_mul(beta, static_cast<i128>(*root)));
    out.exact_radius = narrow(floor_radius);
  } else {
    const i128 b2q = checked_mul(checked_mul(beta, beta), qq);
    floor_radius = checked_add(alpha, static_cast<i128>(isqrt128(static_cast<u128>(b2q))));
    if (beta == 0) out.exact_radius = narrow(alpha);
  }
  out.radius = static_cast<double>(static_cast<long double>(alpha) +
                                   static_cast<long double>(beta) * std::sqrt(static_cast<long double>(q)));
  out.upper = narrow(checked_add(out.center, floor_radius));
  // ceil(center - radius) = center - floor(radius) for both rational and irrational radius.
  out.raw_lower = narrow(static_cast<i128>(out.center) - floor_radius);
  out.lower = out.raw_lower < 0 ? 0 : out.raw_lower;
  return out;
}

}  // namespace fermat
