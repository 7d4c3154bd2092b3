#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace fermat {

/// Deterministic trial-division primality test; inputs here are at most 2^32.
constexpr bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t f = 3; f * f <= v; f += 2) {
    if (v % f == 0) return false;
  }
  return true;
}

/// Distinct prime factors in increasing order.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= v; ++f) {
    if (v % f == 0) {
      out.push_back(f);
      while (v % f == 0) v /= f;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

/// All positive divisors in increasing order.
inline std::vector<std::uint64_t> divisors(std::uint64_t v) {
  std::vector<std::uint64_t> low, high;
  for (std::uint64_t f = 1; f * f <= v; ++f) {
    if (v % f == 0) {
      low.push_back(f);
      if (f != v / f) high.push_back(v / f);
    }
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

constexpr std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

constexpr std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

/// Non-negative residue of v modulo m (m > 0).
constexpr std::int64_t floor_mod(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace fermat
