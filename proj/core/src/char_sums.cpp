#include "fermat/char_sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "fermat/arith.hpp"
#include "fermat/error.hpp"
#include "fermat/numtheory.hpp"

namespace fermat {
namespace {

using LongComplex = std::complex<long double>;

constexpr std::uint64_t kDirectJacobiLimit = 10'000'000;

std::vector<ComplexValue> roots_table(std::uint64_t den) {
  std::vector<ComplexValue> out(den);
  for (std::uint64_t t = 0; t < den; ++t) out[t] = root_of_unity(static_cast<std::int64_t>(t), den);
  return out;
}

const FieldPtr& common_context(std::span<const MultiplicativeCharacter> chars) {
  if (chars.empty()) fail(ErrorCode::kInvalidArgument, "need at least one character");
  for (const auto& c : chars) require_same_context(chars.front().context(), c.context());
  return chars.front().context();
}

std::uint64_t checked_power_bound(std::uint64_t base, std::size_t e, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (v > limit / base) return limit + 1;
    v *= base;
  }
  return v;
}

ComplexValue to_double(LongComplex z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

GaussSumResult gauss_sum(const MultiplicativeCharacter& chi) {
  const FieldContext& ctx = *chi.context();
  const auto psi_roots = roots_table(ctx.p());
  const auto chi_roots = roots_table(chi.d());
  const auto& exp = ctx.exp_table();
  const auto& tr = ctx.trace_table();
  LongComplex acc = 0;
  std::uint64_t t = 0;  // j*k mod d
  for (std::uint64_t k = 0; k < exp.size(); ++k) {
    const ComplexValue term = psi_roots[tr[exp[k]]] * chi_roots[t];
    acc += LongComplex(term.real(), term.imag());
    t += chi.j();
    if (t >= chi.d()) t -= chi.d();
  }
  return {to_double(acc), chi.d(), chi.j(), ctx.q()};
}

GaussSumTable::GaussSumTable(FieldPtr ctx, std::uint32_t modulus)
    : ctx_(std::move(ctx)), modulus_(modulus) {
  if (modulus_ == 0 || ctx_->group_order() % modulus_ != 0) {
    fail(ErrorCode::kNotDivisor, std::to_string(modulus_) + " does not divide q - 1");
  }
  const auto psi_roots = roots_table(ctx_->p());
  const auto& exp = ctx_->exp_table();
  const auto& tr = ctx_->trace_table();
  std::vector<LongComplex> folded(modulus_, 0);
  for (std::uint64_t k = 0; k < exp.size(); ++k) {
    const ComplexValue v = psi_roots[tr[exp[k]]];
    folded[k % modulus_] += LongComplex(v.real(), v.imag());
  }
  folded_.resize(modulus_);
  for (std::uint32_t r = 0; r < modulus_; ++r) folded_[r] = to_double(folded[r]);
  roots_ = roots_table(modulus_);
  cache_.assign(modulus_, {});
  ready_.assign(modulus_, false);
}

ComplexValue GaussSumTable::operator[](std::uint64_t u) const {
  u %= modulus_;
  if (!ready_[u]) {
    LongComplex acc = 0;
    std::uint64_t t = 0;  // u*r mod D
    for (std::uint32_t r = 0; r < modulus_; ++r) {
      const ComplexValue term = folded_[r] * roots_[t];
      acc += LongComplex(term.real(), term.imag());
      t += u;
      if (t >= modulus_) t -= modulus_;
    }
    cache_[u] = to_double(acc);
    ready_[u] = true;
  }
  return cache_[u];
}

ComplexValue GaussSumTable::of(const MultiplicativeCharacter& chi) const {
  require_same_context(ctx_, chi.context());
  const std::uint32_t step = ctx_->group_order() / modulus_;
  const std::uint32_t m = chi.exponent_in_group();
  if (m % step != 0) {
    fail(ErrorCode::kInvalidArgument, "character does not factor through chi_" + std::to_string(modulus_));
  }
  return (*this)[m / step];
}

ComplexValue quadratic_gauss_closed_form(std::uint32_t p, std::uint32_t n) {
  if (p == 2) fail(ErrorCode::kUnsupported, "quadratic Gauss sum needs odd p");
  if (!is_prime(p)) fail(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  const long double root_q = std::pow(std::sqrt(static_cast<long double>(p)), static_cast<long double>(n));
  const double sign = (n + 1) % 2 == 0 ? 1.0 : -1.0;
  const auto magnitude = static_cast<double>(root_q);
  if (p % 4 == 1) return {sign * magnitude, 0.0};
  // i^n cycles through 1, i, -1, -i.
  static constexpr ComplexValue kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return sign * magnitude * kPowersOfI[n % 4];
}

ComplexValue jacobi_sum_direct(std::span<const MultiplicativeCharacter> chars, FieldElement b) {
  const FieldPtr& ctx_ptr = common_context(chars);
  const FieldContext& ctx = *ctx_ptr;
  const std::size_t s = chars.size();
  if (s < 2) fail(ErrorCode::kInvalidArgument, "Jacobi sums need s >= 2");
  if (!ctx.contains(b)) fail(ErrorCode::kContextMismatch, "b is not in the field");
  const std::uint32_t q = ctx.q();
  if (checked_power_bound(q, s - 1, kDirectJacobiLimit) > kDirectJacobiLimit) {
    fail(ErrorCode::kTooLarge, "direct Jacobi sum exceeds q^{s-1} <= 1e7");
  }

  std::vector<std::vector<ComplexValue>> values(s, std::vector<ComplexValue>(q));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::uint32_t x = 0; x < q; ++x) values[i][x] = chars[i](FieldElement{x});
  }

  // sub[c * q + y] = c - y, worthwhile once the sum has at least q^2 terms.
  std::vector<std::uint32_t> sub;
  const bool use_table = s >= 3 && q <= 2048;
  if (use_table) {
    sub.resize(std::size_t{q} * q);
    for (std::uint32_t c = 0; c < q; ++c) {
      for (std::uint32_t y = 0; y < q; ++y) sub[std::size_t{c} * q + y] = ctx.sub(FieldElement{c}, FieldElement{y}).encoded();
    }
  }
  auto minus = [&](std::uint32_t c, std::uint32_t y) {
    return use_table ? sub[std::size_t{c} * q + y] : ctx.sub(FieldElement{c}, FieldElement{y}).encoded();
  };

  // remaining = b - (b_1 + ... + b_i); b_s takes whatever is left.
  LongComplex total = 0;
  auto recurse = [&](auto&& self, std::size_t level, std::uint32_t remaining, ComplexValue partial) -> void {
    if (level + 1 == s) {
      if (remaining != 0) {
        const ComplexValue t = partial * values[level][remaining];
        total += LongComplex(t.real(), t.imag());
      }
      return;
    }
    for (std::uint32_t x = 1; x < q; ++x) {
      self(self, level + 1, minus(remaining, x), partial * values[level][x]);
    }
  };
  recurse(recurse, 0, b.encoded(), ComplexValue{1.0, 0.0});
  return to_double(total);
}

ComplexValue jacobi_from_gauss(std::span<const MultiplicativeCharacter> chars) {
  const FieldPtr& ctx = common_context(chars);
  std::uint64_t big_d = 1;
  for (const auto& c : chars) {
    if (c.is_trivial()) fail(ErrorCode::kTrivialFactorCharacter, "jacobi_from_gauss needs nontrivial characters");
    big_d = std::lcm<std::uint64_t>(big_d, c.d());
  }
  const GaussSumTable table(ctx, static_cast<std::uint32_t>(big_d));
  ComplexValue product{1.0, 0.0};
  MultiplicativeCharacter combined = MultiplicativeCharacter::trivial(ctx);
  for (const auto& c : chars) {
    product *= table.of(c);
    combined = combined * c;
  }
  if (combined.is_trivial()) return -product / static_cast<double>(ctx->q());
  return product / table.of(combined);
}

ComplexValue jacobi_b_reduction(std::span<const MultiplicativeCharacter> chars, FieldElement b) {
  common_context(chars);
  if (b.is_zero()) fail(ErrorCode::kZeroArgument, "the b-reduction needs b != 0");
  ComplexValue scale{1.0, 0.0};
  for (const auto& c : chars) scale *= c(b);
  const bool all_nontrivial =
      std::all_of(chars.begin(), chars.end(), [](const auto& c) { return !c.is_trivial(); });
  const ComplexValue j1 = all_nontrivial ? jacobi_from_gauss(chars)
                                         : jacobi_sum_direct(chars, chars.front().context()->one());
  return scale * j1;
}

double jacobi_expected_modulus(std::span<const MultiplicativeCharacter> chars) {
  const FieldPtr& ctx = common_context(chars);
  MultiplicativeCharacter combined = MultiplicativeCharacter::trivial(ctx);
  for (const auto& c : chars) {
    if (c.is_trivial()) fail(ErrorCode::kTrivialFactorCharacter, "modulus split needs nontrivial characters");
    combined = combined * c;
  }
  const double s = static_cast<double>(chars.size());
  const double e = combined.is_trivial() ? (s - 2) / 2 : (s - 1) / 2;
  return std::pow(static_cast<double>(ctx->q()), e);
}

PurityReport purity_order(ComplexValue z, std::uint64_t k_max) {
  if (z == ComplexValue{0.0, 0.0}) fail(ErrorCode::kZeroInput, "purity of zero is undefined");
  PurityReport out;
  out.search_bound = k_max;
  const long double angle = std::atan2(static_cast<long double>(z.imag()), static_cast<long double>(z.real()));
  const long double turns = angle / std::numbers::pi_v<long double>;  // z^k real iff k*turns is an integer
  auto real_power = [&](std::uint64_t k) {
    const long double t = turns * static_cast<long double>(k);
    const long double frac = t - std::nearbyint(t);
    return std::fabs(std::sin(std::numbers::pi_v<long double> * frac)) < kPurityTolerance;
  };
  // The distance from k*turns to the nearest integer reaches a new minimum
  // only at continued-fraction denominators of turns, so the first k that
  // passes is among them.
  long double rest = turns - std::floor(turns);
  std::uint64_t k_prev = 0, k = 1;
  while (k <= k_max) {
    if (real_power(k)) {
      out.is_pure = true;
      out.order = k;
      break;
    }
    if (rest == 0) break;
    const long double inv = 1 / rest;
    const long double a = std::floor(inv);
    rest = inv - a;
    if (a > static_cast<long double>(k_max)) break;
    const std::uint64_t next = static_cast<std::uint64_t>(a) * k + k_prev;
    k_prev = k;
    k = next;
  }
  return out;
}

GaussPuritySuite gauss_purity_suite(const FieldPtr& ctx, std::uint32_t d) {
  const GaussSumTable table(ctx, d);
  GaussPuritySuite out;
  out.d = d;
  const std::uint64_t k_max = std::uint64_t{4} * d * ctx->p();
  for (std::uint32_t j = 1; j < d; ++j) {
    out.reports.push_back(purity_order(table[j], k_max));
    out.all_pure = out.all_pure && out.reports.back().is_pure;
  }
  out.admissible_r = minimal_admissible_r(d, ctx->p()).r;
  return out;
}

DavenportHasseReport davenport_hasse_check(const MultiplicativeCharacter& lambda, std::uint32_t m,
                                           std::uint64_t k, const MultiplicativeCharacter& chi) {
  require_same_context(lambda.context(), chi.context());
  if (m == 0 || lambda.order() != m) {
    fail(ErrorCode::kOrderMismatch, "lambda has order " + std::to_string(lambda.order()) + ", declared " +
                                        std::to_string(m));
  }
  if (k == 0) fail(ErrorCode::kInvalidArgument, "k must be a positive integer");
  const FieldPtr& ctx = lambda.context();
  const GaussSumTable table(ctx, ctx->group_order());
  const auto gcd_mk = static_cast<std::uint32_t>(std::gcd<std::uint64_t>(m, k));

  LongComplex phase = 1;
  long double log_mod = 0;
  auto accumulate = [&](ComplexValue g, int sign) {
    const long double r = std::abs(LongComplex(g.real(), g.imag()));
    LongComplex unit(g.real() / r, g.imag() / r);
    phase *= sign > 0 ? unit : std::conj(unit);
    phase /= std::abs(phase);
    log_mod += sign * std::log(r);
  };
  for (std::uint32_t j = 0; j < m; ++j) {
    const auto step = static_cast<std::int64_t>(mul_mod(k % m, j, m));
    accumulate(table.of(lambda.pow(step) * chi), +1);
  }
  const ComplexValue denominator = table.of(chi.pow(m / gcd_mk));
  for (std::uint32_t i = 0; i < gcd_mk; ++i) accumulate(denominator, -1);

  DavenportHasseReport out;
  out.phase = to_double(phase);
  out.log_modulus = static_cast<double>(log_mod);
  const std::uint64_t l = std::lcm(std::lcm<std::uint64_t>(m, ctx->p()), 2);
  out.purity = purity_order(out.phase, 4 * l * gcd_mk);
  return out;
}

std::vector<IdentityCheck> run_identity_suite(const FieldPtr& ctx, const IdentitySuiteOptions& options) {
  std::vector<IdentityCheck> out;
  const std::uint32_t q = ctx->q();
  const std::uint32_t order = ctx->group_order();
  const double qd = q;
  const double root_q = std::sqrt(qd);
  std::mt19937_64 rng(options.seed);

  auto finish = [&](IdentityCheck c) {
    c.pass = c.max_residual <= c.tolerance;
    out.push_back(std::move(c));
  };

  // Exponents m of chi_{q-1}^m under test: all of them for small fields, a
  // fixed-seed sample otherwise.
  std::vector<std::uint32_t> exponents;
  constexpr std::uint32_t kMaxCharacters = 2048;
  constexpr std::uint32_t kSampledCharacters = 256;
  if (order <= kMaxCharacters) {
    for (std::uint32_t m = 0; m < order; ++m) exponents.push_back(m);
  } else {
    exponents.push_back(0);
    std::uniform_int_distribution<std::uint32_t> pick(1, order - 1);
    for (std::uint32_t i = 1; i < kSampledCharacters; ++i) exponents.push_back(pick(rng));
  }
  const GaussSumTable table(ctx, order);
  const FieldElement minus_one = ctx->neg(ctx->one());

  {
    IdentityCheck c{"gauss_trivial", std::abs(table[0] + 1.0), 1e-9 * qd, 1, true};
    finish(c);
  }
  {
    IdentityCheck mod{"gauss_modulus", 0.0, 1e-9, 0, true};
    IdentityCheck conj{"gauss_conjugate_product", 0.0, 1e-6 * qd, 0, true};
    IdentityCheck orth{"character_orthogonality", 0.0, 1e-9 * qd, 0, true};
    for (const auto m : exponents) {
      const MultiplicativeCharacter chi(ctx, order, m);
      ComplexValue sum{0, 0};
      for (std::uint32_t k = 0; k < order; ++k) sum += chi(FieldElement{ctx->exp_table()[k]});
      const double expected_sum = m == 0 ? static_cast<double>(order) : 0.0;
      orth.max_residual = std::max(orth.max_residual, std::abs(sum - expected_sum));
      ++orth.cases;
      if (m == 0) continue;
      const ComplexValue g = table[m];
      mod.max_residual = std::max(mod.max_residual, std::abs(std::abs(g) - root_q) / root_q);
      ++mod.cases;
      const ComplexValue prod = g * table[order - m];
      conj.max_residual = std::max(conj.max_residual, std::abs(prod - chi(minus_one) * qd));
      ++conj.cases;
    }
    finish(mod);
    finish(conj);
    finish(orth);
  }
  if (ctx->p() != 2) {
    const MultiplicativeCharacter quad(ctx, 2, 1);
    const ComplexValue g = gauss_sum(quad).value;
    const ComplexValue closed = quadratic_gauss_closed_form(ctx->p(), ctx->n());
    finish({"quadratic_closed_form", std::abs(g - closed) / root_q, 1e-9, 1, true});
  }

  // Jacobi identities over tuples of nontrivial characters.
  {
    IdentityCheck gauss_vs_direct{"jacobi_gauss_vs_direct", 0.0, 1e-6, 0, true};
    IdentityCheck modulus{"jacobi_modulus_split", 0.0, 1e-9, 0, true};
    IdentityCheck reduction{"jacobi_b_reduction", 0.0, 1e-6, 0, true};
    for (std::size_t s = 2; s <= 3 && order >= 2; ++s) {
      const std::uint64_t per_sum = checked_power_bound(q, s - 1, UINT64_MAX / 2);
      if (per_sum > kDirectJacobiLimit) continue;
      const std::uint64_t max_tuples = std::max<std::uint64_t>(1, options.direct_budget / per_sum);
      // Non-decreasing exponent tuples; J is symmetric in its arguments.
      std::vector<std::vector<std::uint32_t>> tuples;
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < s; ++i) total = total > max_tuples ? total : total * (order - 1);
      if (total <= max_tuples) {
        std::vector<std::uint32_t> t(s, 1);
        while (true) {
          tuples.push_back(t);
          std::size_t i = s;
          while (i-- > 0) {
            if (t[i] + 1 < order) {
              ++t[i];
              for (std::size_t k = i + 1; k < s; ++k) t[k] = t[i];
              break;
            }
          }
          if (i == static_cast<std::size_t>(-1)) break;
        }
      } else {
        std::uniform_int_distribution<std::uint32_t> pick(1, order - 1);
        for (std::uint64_t n = 0; n < max_tuples; ++n) {
          std::vector<std::uint32_t> t(s);
          for (auto& v : t) v = pick(rng);
          tuples.push_back(std::move(t));
        }
      }
      const double scale = std::pow(qd, (static_cast<double>(s) - 1) / 2);
      std::uniform_int_distribution<std::uint32_t> pick_b(1, q - 1);
      std::uint64_t index = 0;
      for (const auto& t : tuples) {
        std::vector<MultiplicativeCharacter> chars;
        for (const auto m : t) chars.emplace_back(ctx, order, m);
        const ComplexValue via_gauss = jacobi_from_gauss(chars);
        const ComplexValue direct = jacobi_sum_direct(chars, ctx->one());
        gauss_vs_direct.max_residual = std::max(gauss_vs_direct.max_residual, std::abs(via_gauss - direct) / scale);
        ++gauss_vs_direct.cases;
        const double expected = jacobi_expected_modulus(chars);
        modulus.max_residual = std::max(modulus.max_residual, std::abs(std::abs(direct) - expected) / expected);
        ++modulus.cases;
        // The b-reduction needs a second direct sum; check it on every 8th tuple.
        if (index++ % 8 == 0 && q > 2) {
          const FieldElement b{pick_b(rng)};
          const ComplexValue lhs = jacobi_b_reduction(chars, b);
          const ComplexValue rhs = jacobi_sum_direct(chars, b);
          reduction.max_residual = std::max(reduction.max_residual, std::abs(lhs - rhs) / scale);
          ++reduction.cases;
        }
      }
    }
    finish(gauss_vs_direct);
    finish(modulus);
    finish(reduction);
  }

  {
    IdentityCheck evans{"evans_purity_equivalence", 0.0, 0.0, 0, true};
    for (const auto d : divisors(order)) {
      if (d <= 2) continue;
      if (d > kMaxCharacters) continue;
      const auto suite = gauss_purity_suite(ctx, static_cast<std::uint32_t>(d));
      if (!suite.equivalence_holds()) evans.max_residual += 1.0;
      ++evans.cases;
    }
    finish(evans);
  }
  {
    IdentityCheck dh{"davenport_hasse_purity", 0.0, 0.0, 0, true};
    const auto divs = divisors(order);
    std::uniform_int_distribution<std::size_t> pick_div(0, divs.size() - 1);
    std::uniform_int_distribution<std::uint32_t> pick_exp(0, order - 1);
    for (std::uint32_t i = 0; i < options.davenport_hasse_cases; ++i) {
      const auto m = static_cast<std::uint32_t>(divs[pick_div(rng)]);
      if (m > kMaxCharacters) continue;
      // A generator of the order-m subgroup of characters: exponent coprime to m.
      std::uint32_t u = 1;
      if (m > 1) {
        std::uniform_int_distribution<std::uint32_t> pick_u(1, m - 1);
        do u = pick_u(rng); while (std::gcd(u, m) != 1);
      }
      std::uniform_int_distribution<std::uint64_t> pick_k(1, 2 * std::uint64_t{m});
      const MultiplicativeCharacter lambda(ctx, m, u);
      const MultiplicativeCharacter chi(ctx, order, pick_exp(rng));
      const auto report = davenport_hasse_check(lambda, m, pick_k(rng), chi);
      if (!report.purity.is_pure) dh.max_residual += 1.0;
      ++dh.cases;
    }
    finish(dh);
  }
  return out;
}

}  // namespace fermat
