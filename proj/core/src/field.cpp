#include "fermat/field.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string>

#include "fermat/error.hpp"
#include "fermat/numtheory.hpp"

namespace fermat {
namespace {

// Dense polynomials over Z_p, ascending coefficients, no trailing zeros.
// Coefficients stay below p < 2^31, so products fit in 64 bits.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

// Remainder of a modulo f.
Poly poly_mod_p(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t deg_f = f.size() - 1;
  const std::uint64_t lead_inv = inv_mod_prime(f.back(), p);
  while (a.size() > deg_f) {
    const std::size_t shift = a.size() - 1 - deg_f;
    const std::uint64_t c = a.back() * lead_inv % p;
    for (std::size_t i = 0; i <= deg_f; ++i) {
      a[shift + i] = (a[shift + i] + p - c * f[i] % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_mod_p(std::move(r), f, p);
}

Poly poly_pow_mod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r = poly_mod_p(Poly{1}, f, p);
  base = poly_mod_p(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) r = poly_mul_mod(r, base, f, p);
    e >>= 1;
    if (e > 0) base = poly_mul_mod(base, base, f, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod_p(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

// x^{p^k} mod f for k = 0..max_k.
std::vector<Poly> frobenius_powers_of_x(const Poly& f, std::uint64_t p, std::uint32_t max_k) {
  std::vector<Poly> out;
  Poly h = poly_mod_p(Poly{0, 1}, f, p);
  out.push_back(h);
  for (std::uint32_t k = 1; k <= max_k; ++k) {
    h = poly_pow_mod(h, p, f, p);
    out.push_back(h);
  }
  return out;
}

Poly to_poly(std::uint64_t encoded, std::uint64_t p) {
  Poly r;
  while (encoded > 0) {
    r.push_back(encoded % p);
    encoded /= p;
  }
  return r;
}

std::uint32_t from_poly(const Poly& a, std::uint64_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return static_cast<std::uint32_t>(v);
}

}  // namespace

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const auto n = static_cast<std::uint32_t>(f.size() - 1);
  if (n == 1) return true;
  if (f[0] == 0) return false;  // divisible by x
  const Poly x{0, 1};
  const auto frob = frobenius_powers_of_x(f, p, n);
  if (poly_sub(frob[n], x, p) != Poly{}) return false;
  for (const auto ell : prime_factors(n)) {
    const Poly g = poly_gcd(f, poly_sub(frob[n / ell], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::uint64_t max_field_size_from_env() {
  if (const char* env = std::getenv("FERMAT_MAX_Q")) {
    std::uint64_t v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && v >= 2) return v;
  }
  return kDefaultMaxFieldSize;
}

FieldPtr build_field(std::uint32_t p, std::uint32_t n, const FieldOptions& options) {
  if (!is_prime(p)) fail(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (n < 1) fail(ErrorCode::kInvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > options.max_field_size || q > (std::uint64_t{1} << 31)) {
      fail(ErrorCode::kFieldTooLarge, "p^n exceeds the field size cap of " +
                                          std::to_string(options.max_field_size));
    }
  }

  Poly f;
  if (options.modulus) {
    const auto& m = *options.modulus;
    if (m.size() != n + 1 || m.back() != 1) {
      fail(ErrorCode::kInvalidArgument, "modulus must be monic of degree " + std::to_string(n));
    }
    for (const auto c : m) {
      if (c >= p) fail(ErrorCode::kInvalidArgument, "modulus coefficients must lie in [0, p)");
    }
    if (!is_irreducible(p, m)) fail(ErrorCode::kModulusReducible, "modulus is reducible over F_p");
    f.assign(m.begin(), m.end());
  } else {
    // Lexicographic order over (c_0, ..., c_{n-1}, 1): c_{n-1} varies fastest.
    const std::uint64_t count = q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint32_t> cand(n + 1, 0);
      cand[n] = 1;
      std::uint64_t v = idx;
      for (std::uint32_t k = n; k-- > 0;) {
        cand[k] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      if (is_irreducible(p, cand)) {
        f.assign(cand.begin(), cand.end());
        break;
      }
    }
  }

  auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
  ctx->params_.p = p;
  ctx->params_.n = n;
  ctx->params_.q = static_cast<std::uint32_t>(q);
  ctx->params_.modulus.assign(f.begin(), f.end());

  const std::uint64_t order = q - 1;
  const auto order_primes = prime_factors(order);
  auto is_primitive = [&](std::uint64_t cand) {
    if (cand == 0 || cand >= q) return false;
    const Poly c = to_poly(cand, p);
    if (order == 1) return cand == 1;
    if (poly_pow_mod(c, order, f, p) != Poly{1}) return false;
    for (const auto ell : order_primes) {
      if (poly_pow_mod(c, order / ell, f, p) == Poly{1}) return false;
    }
    return true;
  };

  std::uint64_t g = 0;
  if (options.generator) {
    if (!is_primitive(*options.generator)) {
      fail(ErrorCode::kNotPrimitive, std::to_string(*options.generator) +
                                         " is not a primitive element");
    }
    g = *options.generator;
  } else {
    for (std::uint64_t cand = 1; cand < q; ++cand) {
      if (is_primitive(cand)) {
        g = cand;
        break;
      }
    }
  }

  ctx->exp_table_.resize(order);
  ctx->log_table_.assign(q, 0);
  const Poly g_poly = to_poly(g, p);
  std::vector<std::uint64_t> cur(n, 0), prod(n + g_poly.size(), 0);
  cur[0] = 1;
  for (std::uint64_t k = 0; k < order; ++k) {
    std::uint64_t e = 0;
    for (std::uint32_t i = n; i-- > 0;) e = e * p + cur[i];
    ctx->exp_table_[k] = static_cast<std::uint32_t>(e);
    ctx->log_table_[e] = static_cast<std::uint32_t>(k);
    std::fill(prod.begin(), prod.end(), 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (cur[i] == 0) continue;
      for (std::size_t j = 0; j < g_poly.size(); ++j) prod[i + j] = (prod[i + j] + cur[i] * g_poly[j]) % p;
    }
    for (std::size_t top = prod.size(); top-- > n;) {
      const std::uint64_t c = prod[top];
      if (c == 0) continue;
      prod[top] = 0;
      for (std::uint32_t j = 0; j < n; ++j) prod[top - n + j] = (prod[top - n + j] + (p - c) * f[j]) % p;
    }
    std::copy_n(prod.begin(), n, cur.begin());
  }

  // Trace of each basis monomial, then extend F_p-linearly.
  std::vector<std::uint64_t> basis_trace(n, 0);
  for (std::uint32_t k = 0; k < n; ++k) {
    Poly mono(k + 1, 0);
    mono[k] = 1;
    Poly h = poly_mod_p(mono, f, p);
    Poly acc;
    for (std::uint32_t i = 0; i < n; ++i) {
      Poly sum = acc;
      if (sum.size() < h.size()) sum.resize(h.size(), 0);
      for (std::size_t t = 0; t < h.size(); ++t) sum[t] = (sum[t] + h[t]) % p;
      trim(sum);
      acc = std::move(sum);
      h = poly_pow_mod(h, p, f, p);
    }
    if (acc.size() > 1) fail(ErrorCode::kNumericalFailure, "trace left the prime field");
    basis_trace[k] = acc.empty() ? 0 : acc[0];
  }
  ctx->trace_table_.resize(q);
  for (std::uint64_t e = 0; e < q; ++e) {
    std::uint64_t v = e, t = 0;
    for (std::uint32_t k = 0; k < n && v > 0; ++k) {
      t = (t + (v % p) * basis_trace[k]) % p;
      v /= p;
    }
    ctx->trace_table_[e] = static_cast<std::uint32_t>(t);
  }
  return ctx;
}

void FieldContext::check(FieldElement x) const {
  if (!contains(x)) {
    fail(ErrorCode::kOutOfRange,
         "element " + std::to_string(x.encoded()) + " is not in F_" + std::to_string(params_.q));
  }
}

FieldElement FieldContext::add(FieldElement x, FieldElement y) const {
  check(x);
  check(y);
  const std::uint32_t p = params_.p;
  if (p == 2) return FieldElement{x.encoded() ^ y.encoded()};
  std::uint32_t a = x.encoded(), b = y.encoded();
  std::uint32_t r = 0, w = 1;
  while (a != 0 || b != 0) {
    std::uint32_t s = a % p + b % p;
    if (s >= p) s -= p;
    r += s * w;
    w *= p;
    a /= p;
    b /= p;
  }
  return FieldElement{r};
}

FieldElement FieldContext::neg(FieldElement x) const {
  check(x);
  const std::uint32_t p = params_.p;
  if (p == 2) return x;
  std::uint32_t a = x.encoded(), r = 0, w = 1;
  while (a != 0) {
    const std::uint32_t d = a % p;
    r += (d == 0 ? 0 : p - d) * w;
    w *= p;
    a /= p;
  }
  return FieldElement{r};
}

FieldElement FieldContext::mul(FieldElement x, FieldElement y) const {
  check(x);
  check(y);
  if (x.is_zero() || y.is_zero()) return zero();
  const std::uint64_t k = std::uint64_t{log_table_[x.encoded()]} + log_table_[y.encoded()];
  return FieldElement{exp_table_[k % group_order()]};
}

FieldElement FieldContext::inv(FieldElement x) const {
  check(x);
  if (x.is_zero()) fail(ErrorCode::kDivisionByZero, "inverse of zero");
  const std::uint32_t k = log_table_[x.encoded()];
  return FieldElement{exp_table_[k == 0 ? 0 : group_order() - k]};
}

FieldElement FieldContext::pow(FieldElement x, std::int64_t m) const {
  check(x);
  if (x.is_zero()) {
    if (m < 0) fail(ErrorCode::kDivisionByZero, "negative power of zero");
    return m == 0 ? one() : zero();
  }
  FieldElement base = m < 0 ? inv(x) : x;
  // Negation of INT64_MIN is avoided by reducing modulo the group order first.
  std::uint64_t e = m < 0 ? static_cast<std::uint64_t>(-(m + 1)) + 1 : static_cast<std::uint64_t>(m);
  e %= group_order();
  FieldElement r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::uint32_t FieldContext::dlog(FieldElement x) const {
  check(x);
  if (x.is_zero()) fail(ErrorCode::kZeroElement, "discrete log of zero");
  return log_table_[x.encoded()];
}

FieldElement FieldContext::exp(std::int64_t k) const {
  return FieldElement{exp_table_[floor_mod(k, group_order())]};
}

std::uint32_t FieldContext::trace(FieldElement x) const {
  check(x);
  return trace_table_[x.encoded()];
}

FieldElement FieldContext::decode(std::uint64_t i) const {
  if (i >= params_.q) {
    fail(ErrorCode::kOutOfRange,
         std::to_string(i) + " is outside [0, " + std::to_string(params_.q) + ")");
  }
  return FieldElement{static_cast<std::uint32_t>(i)};
}

std::uint32_t FieldContext::encode(FieldElement x) const {
  check(x);
  return x.encoded();
}

std::vector<std::uint32_t> FieldContext::coefficients(FieldElement x) const {
  check(x);
  std::vector<std::uint32_t> out(params_.n, 0);
  std::uint32_t v = x.encoded();
  for (std::uint32_t k = 0; k < params_.n; ++k) {
    out[k] = v % params_.p;
    v /= params_.p;
  }
  return out;
}

FieldElement FieldContext::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != params_.n) {
    fail(ErrorCode::kInvalidArgument, "coefficient vector must have length n");
  }
  std::uint64_t v = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k] >= params_.p) fail(ErrorCode::kOutOfRange, "coefficient outside [0, p)");
    v = v * params_.p + coeffs[k];
  }
  return FieldElement{static_cast<std::uint32_t>(v)};
}

FieldElement FieldContext::parse(std::string_view text) const {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.starts_with("g^")) {
    text.remove_prefix(2);
    std::int64_t k = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      fail(ErrorCode::kInvalidArgument, "bad exponent in element \"g^" + std::string(text) + "\"");
    }
    return exp(k);
  }
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ErrorCode::kInvalidArgument, "cannot parse field element \"" + std::string(text) + "\"");
  }
  return decode(v);
}

}  // namespace fermat
