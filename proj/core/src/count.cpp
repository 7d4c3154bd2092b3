#include "fermat/count.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "fermat/char_sums.hpp"
#include "fermat/characters.hpp"
#include "fermat/error.hpp"
#include "fermat/numtheory.hpp"

namespace fermat {
namespace {

using i128 = __int128;
using LongComplex = std::complex<long double>;

constexpr std::uint64_t kConvolutionLimit = 1'000'000'000;
constexpr std::uint64_t kNaiveLimit = 100'000'000;
constexpr std::uint64_t kCharsumBoxLimit = 10'000'000;
constexpr std::uint64_t kCharsumGaussWorkLimit = 4'000'000'000;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) fail(ErrorCode::kTooLarge, "point count exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

i128 checked_mul(i128 a, i128 b) {
  i128 r = 0;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::kTooLarge, "integer overflow");
  return r;
}

// Digitwise base-p addition of encodings, without range checks.
inline std::uint32_t add_encoded(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  if (p == 2) return a ^ b;
  std::uint32_t r = 0, w = 1;
  while (a != 0 || b != 0) {
    std::uint32_t s = a % p + b % p;
    if (s >= p) s -= p;
    r += s * w;
    w *= p;
    a /= p;
    b /= p;
  }
  return r;
}

std::uint64_t saturating_power(std::uint64_t base, std::size_t e, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

std::uint64_t box_size(const std::vector<std::uint32_t>& d, std::uint64_t cap) {
  std::uint64_t box = 1;
  for (const auto di : d) {
    if (box > cap / (di - 1)) return cap + 1;
    box *= di - 1;
  }
  return box;
}

std::uint64_t lcm_of(const std::vector<std::uint32_t>& d) {
  std::uint64_t l = 1;
  for (const auto di : d) l = std::lcm<std::uint64_t>(l, di);
  return l;
}

// image[x] = a * x^d for every x in F_q.
std::vector<std::uint32_t> monomial_image(const FieldContext& ctx, FieldElement a, std::uint32_t d) {
  std::vector<std::uint32_t> out(ctx.q());
  for (std::uint32_t x = 0; x < ctx.q(); ++x) {
    out[x] = ctx.mul(a, ctx.pow(FieldElement{x}, d)).encoded();
  }
  return out;
}

}  // namespace

void HypersurfaceSpec::validate() const {
  if (!ctx) fail(ErrorCode::kInvalidSpec, "missing field");
  if (d.size() < 2) fail(ErrorCode::kInvalidSpec, "need s >= 2 variables");
  if (a.size() != d.size()) fail(ErrorCode::kInvalidSpec, "need one coefficient per exponent");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 2 || ctx->group_order() % d[i] != 0) {
      fail(ErrorCode::kInvalidSpec, "d_" + std::to_string(i + 1) + " = " + std::to_string(d[i]) +
                                        " must be >= 2 and divide q - 1 = " + std::to_string(ctx->group_order()));
    }
    if (!ctx->contains(a[i]) || a[i].is_zero()) {
      fail(ErrorCode::kInvalidSpec, "a_" + std::to_string(i + 1) + " must be a nonzero element of F_q");
    }
  }
  if (!ctx->contains(b) || b.is_zero()) fail(ErrorCode::kInvalidSpec, "b must be a nonzero element of F_q");
}

std::string_view to_string(CountMethod method) {
  switch (method) {
    case CountMethod::kBruteforce: return "brute";
    case CountMethod::kCharsum: return "charsum";
    case CountMethod::kFormula: return "formula";
  }
  return "unknown";
}

CountMethod parse_count_method(std::string_view text) {
  if (text == "brute" || text == "bruteforce") return CountMethod::kBruteforce;
  if (text == "charsum") return CountMethod::kCharsum;
  if (text == "formula") return CountMethod::kFormula;
  fail(ErrorCode::kInvalidArgument, "unknown count method \"" + std::string(text) + "\"");
}

bool bruteforce_feasible(const HypersurfaceSpec& spec) {
  const std::uint64_t q = spec.ctx->q();
  const bool conv = q * q <= kConvolutionLimit / spec.s();
  const bool naive = saturating_power(q, spec.s(), kNaiveLimit) <= kNaiveLimit;
  return conv || naive;
}

bool charsum_feasible(const HypersurfaceSpec& spec) {
  const std::uint64_t box = box_size(spec.d, kCharsumBoxLimit);
  if (box > kCharsumBoxLimit) return false;
  const std::uint64_t big_d = lcm_of(spec.d);
  return std::min(big_d, box + spec.s() * big_d) * big_d <= kCharsumGaussWorkLimit;
}

CountResult count_bruteforce(const HypersurfaceSpec& spec, BruteforceRoute route) {
  spec.validate();
  const FieldContext& ctx = *spec.ctx;
  const std::uint32_t q = ctx.q(), p = ctx.p();
  const std::size_t s = spec.s();
  const bool conv_ok = std::uint64_t{q} * q <= kConvolutionLimit / s;
  const bool naive_ok = saturating_power(q, s, kNaiveLimit) <= kNaiveLimit;
  if (route == BruteforceRoute::kAuto) {
    if (conv_ok) route = BruteforceRoute::kConvolution;
    else if (naive_ok) route = BruteforceRoute::kNaive;
  }
  if ((route == BruteforceRoute::kConvolution && !conv_ok) || (route == BruteforceRoute::kNaive && !naive_ok) ||
      route == BruteforceRoute::kAuto) {
    fail(ErrorCode::kTooLarge, "brute-force count exceeds s q^2 <= 1e9 and q^s <= 1e8");
  }

  std::vector<std::vector<std::uint32_t>> images;
  for (std::size_t i = 0; i < s; ++i) images.push_back(monomial_image(ctx, spec.a[i], spec.d[i]));

  if (route == BruteforceRoute::kNaive) {
    // Every point of F_q^s; partial[i] = sum of the first i monomials.
    std::int64_t count = 0;
    std::vector<std::uint32_t> x(s, 0), partial(s + 1, 0);
    for (std::size_t i = 0; i < s; ++i) partial[i + 1] = add_encoded(partial[i], images[i][0], p);
    while (true) {
      if (partial[s] == spec.b.encoded()) ++count;
      std::size_t i = s;
      while (i-- > 0) {
        if (++x[i] < q) break;
        x[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
      for (std::size_t k = i; k < s; ++k) partial[k + 1] = add_encoded(partial[k], images[k][x[k]], p);
    }
    return {count, CountMethod::kBruteforce, 0.0};
  }

  // weight[c] = #{x : a_i x^{d_i} = c}, folded by additive convolution.
  auto weights = [&](std::size_t i) {
    std::vector<std::pair<std::uint32_t, std::int64_t>> support;
    std::vector<std::int64_t> w(q, 0);
    for (const auto c : images[i]) ++w[c];
    for (std::uint32_t c = 0; c < q; ++c) {
      if (w[c] != 0) support.emplace_back(c, w[c]);
    }
    return support;
  };
  std::vector<i128> acc(q, 0);
  for (const auto& [c, w] : weights(0)) acc[c] = w;
  for (std::size_t i = 1; i + 1 < s; ++i) {
    const auto support = weights(i);
    std::vector<i128> next(q, 0);
    for (std::uint32_t x = 0; x < q; ++x) {
      if (acc[x] == 0) continue;
      for (const auto& [y, w] : support) next[add_encoded(x, y, p)] += acc[x] * w;
    }
    acc = std::move(next);
  }
  i128 total = 0;
  const FieldElement b = spec.b;
  for (const auto& [y, w] : weights(s - 1)) {
    total += acc[ctx.sub(b, FieldElement{y}).encoded()] * w;
  }
  return {narrow(total), CountMethod::kBruteforce, 0.0};
}

CountResult count_charsum(const HypersurfaceSpec& spec) {
  spec.validate();
  const FieldPtr& ctx = spec.ctx;
  const std::size_t s = spec.s();
  if (!charsum_feasible(spec)) fail(ErrorCode::kTooLarge, "character-sum box exceeds prod(d_i - 1) <= 1e7");

  const auto big_d = static_cast<std::uint32_t>(lcm_of(spec.d));
  const GaussSumTable gauss(ctx, big_d);
  std::vector<ComplexValue> roots(big_d);
  for (std::uint32_t t = 0; t < big_d; ++t) roots[t] = root_of_unity(t, big_d);

  // chi_{d_i}^{l_i} = chi_D^{u_i} with u_i = l_i D / d_i; its value at b / a_i
  // is zeta_D^{u_i k_i} with k_i = dlog(b / a_i).
  struct Level {
    std::vector<std::uint32_t> u;
    std::vector<std::uint32_t> phase;
    std::vector<ComplexValue> g;
  };
  std::vector<Level> levels(s);
  for (std::size_t i = 0; i < s; ++i) {
    const std::uint64_t k = ctx->dlog(ctx->div(spec.b, spec.a[i]));
    const std::uint32_t step = big_d / spec.d[i];
    for (std::uint32_t l = 1; l < spec.d[i]; ++l) {
      const std::uint32_t u = l * step;
      levels[i].u.push_back(u);
      levels[i].phase.push_back(static_cast<std::uint32_t>(mul_mod(u, k, big_d)));
      levels[i].g.push_back(gauss[u]);
    }
  }

  const long double inv_q = 1.0L / ctx->q();
  LongComplex sum = 0;
  auto recurse = [&](auto&& self, std::size_t level, std::uint32_t u_sum, std::uint32_t phase_sum,
                     LongComplex g_prod) -> void {
    if (level == s) {
      LongComplex jacobi = u_sum == 0 ? -g_prod * inv_q
                                      : g_prod / LongComplex(gauss[u_sum].real(), gauss[u_sum].imag());
      const ComplexValue z = roots[phase_sum];
      sum += LongComplex(z.real(), z.imag()) * jacobi;
      return;
    }
    const Level& lv = levels[level];
    for (std::size_t t = 0; t < lv.u.size(); ++t) {
      std::uint32_t u = u_sum + lv.u[t];
      if (u >= big_d) u -= big_d;
      std::uint32_t ph = phase_sum + lv.phase[t];
      if (ph >= big_d) ph -= big_d;
      self(self, level + 1, u, ph, g_prod * LongComplex(lv.g[t].real(), lv.g[t].imag()));
    }
  };
  recurse(recurse, 0, 0, 0, LongComplex(1));

  const long double rounded = std::nearbyint(sum.real());
  const double residual = static_cast<double>(std::abs(sum - LongComplex(rounded, 0)));
  const double scale = std::pow(static_cast<double>(ctx->q()), (static_cast<double>(s) - 1) / 2);
  const double tolerance = std::min(0.5, 1e-6 * scale);
  if (!(residual < tolerance)) {
    fail(ErrorCode::kNumericalFailure, "character sum residual " + std::to_string(residual) +
                                           " exceeds tolerance " + std::to_string(tolerance));
  }
  const i128 center = checked_pow(ctx->q(), static_cast<std::uint32_t>(s - 1));
  return {narrow(center + static_cast<i128>(static_cast<std::int64_t>(rounded))), CountMethod::kCharsum, residual};
}

CommonAdmissibility common_admissibility(const FieldContext& ctx, const std::vector<std::uint32_t>& d) {
  CommonAdmissibility out;
  out.all_admissible = true;
  for (const auto di : d) {
    out.per_exponent.push_back(minimal_admissible_r(di, ctx.p()).r);
    out.all_admissible = out.all_admissible && out.per_exponent.back().has_value();
  }
  if (out.all_admissible && !d.empty()) {
    const auto first = *out.per_exponent.front();
    const bool common = std::all_of(out.per_exponent.begin(), out.per_exponent.end(),
                                    [&](const auto& r) { return *r == first; });
    if (common) {
      out.r = first;
      if (ctx.n() % (2 * first) == 0) out.epsilon = (ctx.n() / (2 * first)) % 2 == 0 ? 1 : -1;
    }
  }
  return out;
}

CountResult count_formula(const HypersurfaceSpec& spec) {
  spec.validate();
  const FieldContext& ctx = *spec.ctx;
  const auto adm = common_admissibility(ctx, spec.d);
  if (!adm.all_admissible) fail(ErrorCode::kNotAdmissible, "some d_i is not (p, r)-admissible");
  if (!adm.r) fail(ErrorCode::kNoCommonR, "the d_i are admissible for different r");
  if (!adm.epsilon) fail(ErrorCode::kParityViolation, "2r does not divide n");

  const std::size_t s = spec.s();
  const i128 eps = *adm.epsilon;
  const i128 root_q = checked_pow(ctx.p(), ctx.n() / 2);

  auto weighted = [&](auto&& matches) {
    i128 prod = 1;
    for (std::size_t i = 0; i < s; ++i) {
      if (matches(i)) prod = checked_mul(prod, 1 - static_cast<i128>(spec.d[i]));
    }
    return prod;
  };
  const i128 head = checked_mul(root_q, weighted([&](std::size_t i) {
                                  return theta(ctx, spec.d[i], spec.a[i], spec.b) == 1;
                                }));
  i128 tail = 0;
  for (i128 j = 1; j <= root_q - eps; ++j) {
    const FieldElement alpha_j = ctx.exp(static_cast<std::int64_t>(j));
    tail += weighted([&](std::size_t i) { return theta(ctx, spec.d[i], spec.a[i], alpha_j) == 1; });
  }
  const i128 sign = (s + 1) % 2 == 0 ? 1 : eps;  // eps^{s+1}
  const i128 scale = checked_pow(static_cast<std::int64_t>(root_q), static_cast<std::uint32_t>(s - 2));
  const i128 center = checked_pow(ctx.q(), static_cast<std::uint32_t>(s - 1));
  const i128 n_points = center - checked_mul(checked_mul(sign, scale), head - tail);
  return {narrow(n_points), CountMethod::kFormula, 0.0};
}

CountResult count_points(const HypersurfaceSpec& spec, CountMethod method) {
  switch (method) {
    case CountMethod::kBruteforce: return count_bruteforce(spec);
    case CountMethod::kCharsum: return count_charsum(spec);
    case CountMethod::kFormula: return count_formula(spec);
  }
  fail(ErrorCode::kInvalidArgument, "unknown count method");
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kMaximal: return "maximal";
    case Status::kMinimal: return "minimal";
    case Status::kNotAttained: return "not_attained";
    case Status::kHypothesesNotMet: return "hypotheses_not_met";
  }
  return "unknown";
}

Status parse_status(std::string_view text) {
  for (const auto st : {Status::kMaximal, Status::kMinimal, Status::kNotAttained, Status::kHypothesesNotMet}) {
    if (to_string(st) == text) return st;
  }
  fail(ErrorCode::kInvalidArgument, "unknown status \"" + std::string(text) + "\"");
}

std::string_view to_string(Attainment attainment) {
  switch (attainment) {
    case Attainment::kMaximalObserved: return "maximal_observed";
    case Attainment::kMinimalObserved: return "minimal_observed";
    case Attainment::kInterior: return "interior";
  }
  return "unknown";
}

ClassificationResult classify(const HypersurfaceSpec& spec, const ClassifyOptions& options) {
  spec.validate();
  const FieldContext& ctx = *spec.ctx;
  const std::size_t s = spec.s();
  ClassificationResult out;
  out.bound = weil_bound(ctx.q(), spec.d);
  for (std::size_t i = 0; i < s; ++i) out.theta_matches.push_back(theta(ctx, spec.d[i], spec.a[i], spec.b) == 1);

  const auto adm = common_admissibility(ctx, spec.d);
  out.r = adm.r;
  out.epsilon = adm.epsilon;

  std::uint32_t g = 0;
  for (const auto di : spec.d) g = std::gcd(g, di);
  if (s == 3) out.reasons.emplace_back("s_equals_3");
  if (s > 3 && g <= 2) out.reasons.emplace_back("gcd_at_most_2");

  if (!out.reasons.empty()) {
    out.status = Status::kHypothesesNotMet;
  } else {
    for (std::size_t i = 0; i < s; ++i) {
      if (!adm.per_exponent[i]) out.reasons.push_back("not_admissible:" + std::to_string(i + 1));
    }
    if (adm.all_admissible && !adm.r) out.reasons.emplace_back("no_common_r");
    if (adm.r && !adm.epsilon) out.reasons.emplace_back("parity_2r_not_dividing_n");
    if (adm.epsilon && *adm.epsilon == -1) out.reasons.emplace_back("n_over_2r_odd");
    for (std::size_t i = 0; i < s; ++i) {
      if (!out.theta_matches[i]) out.reasons.push_back("theta_mismatch:" + std::to_string(i + 1));
    }
    if (!out.reasons.empty()) {
      out.status = Status::kNotAttained;
    } else {
      out.status = s % 2 == 1 ? Status::kMaximal : Status::kMinimal;
    }
  }

  if (options.verify) {
    try {
      if (charsum_feasible(spec)) out.verified_count = count_charsum(spec);
    } catch (const Error&) {
      out.verified_count.reset();
    }
    if (!out.verified_count && bruteforce_feasible(spec)) out.verified_count = count_bruteforce(spec);
  }
  if (out.verified_count && (out.status == Status::kMaximal || out.status == Status::kMinimal)) {
    const std::int64_t endpoint = out.status == Status::kMaximal ? out.bound.upper : out.bound.raw_lower;
    if (out.verified_count->n_points != endpoint) out.reasons.emplace_back("count_off_endpoint");
  }
  return out;
}

AttainmentResult attainment_check(const HypersurfaceSpec& spec, const CountResult& count) {
  spec.validate();
  const auto bound = weil_bound(spec.ctx->q(), spec.d);
  AttainmentResult out;
  if (!exact_sqrt(spec.ctx->q())) {
    out.exact_comparison_unsupported = true;
    return out;
  }
  if (count.n_points == bound.upper) {
    out.kind = Attainment::kMaximalObserved;
  } else if (count.n_points == bound.raw_lower) {
    out.kind = Attainment::kMinimalObserved;
  }
  return out;
}

}  // namespace fermat
