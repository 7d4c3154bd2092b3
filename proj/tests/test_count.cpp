#include <gtest/gtest.h>

#include <random>

#include "fermat/arith.hpp"
#include "fermat/count.hpp"
#include "fermat/error.hpp"
#include "fermat/numtheory.hpp"

using namespace fermat;

namespace {

using Dims = std::vector<std::uint32_t>;

HypersurfaceSpec ones(const FieldPtr& ctx, Dims d) {
  const std::size_t s = d.size();
  return {ctx, std::move(d), std::vector<FieldElement>(s, ctx->one()), ctx->one()};
}

// Counts over Z/p by plain integer loops.
std::int64_t prime_field_oracle(std::uint32_t p, const Dims& d, const std::vector<std::uint32_t>& a, std::uint32_t b) {
  std::vector<std::int64_t> ways(p, 0);
  ways[0] = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::vector<std::int64_t> next(p, 0);
    for (std::uint32_t x = 0; x < p; ++x) {
      std::uint64_t term = a[i];
      for (std::uint32_t k = 0; k < d[i]; ++k) term = term * x % p;
      for (std::uint32_t r = 0; r < p; ++r) next[(r + term) % p] += ways[r];
    }
    ways = std::move(next);
  }
  return ways[b];
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(Count, Examples) {
  const auto f9 = build_field(3, 2);
  const auto f5 = build_field(5, 1);
  EXPECT_EQ(count_bruteforce(ones(f9, {4, 4})).n_points, 24);
  EXPECT_EQ(count_bruteforce(ones(f5, {2, 2})).n_points, 4);
  EXPECT_EQ(count_charsum(ones(f5, {2, 2})).n_points, 4);
  EXPECT_EQ(count_charsum(ones(f9, {4, 4})).n_points, 24);
  EXPECT_EQ(count_formula(ones(f9, {4, 4})).n_points, 24);
  const auto f81 = build_field(3, 4);
  EXPECT_EQ(count_formula(ones(f81, {4, 4})).n_points, 24);
  const auto big = ones(f81, {4, 4, 4, 4, 4});
  const auto formula = count_formula(big).n_points;
  EXPECT_EQ(count_charsum(big).n_points, formula);
  EXPECT_EQ(count_bruteforce(big, BruteforceRoute::kConvolution).n_points, formula);
  EXPECT_EQ(formula, weil_bound(81, Dims(5, 4)).upper);
}

TEST(Count, PrimeFieldOracle) {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 31u}) {
    const auto ctx = build_field(p, 1);
    const auto ds = divisors(p - 1);
    for (int t = 0; t < 30; ++t) {
      const std::size_t s = 2 + rng() % 3;
      Dims d;
      std::vector<std::uint32_t> a;
      for (std::size_t i = 0; i < s; ++i) {
        std::uint32_t di = 1;
        while (di < 2) di = static_cast<std::uint32_t>(ds[rng() % ds.size()]);
        d.push_back(di);
        a.push_back(1 + static_cast<std::uint32_t>(rng() % (p - 1)));
      }
      const std::uint32_t b = 1 + static_cast<std::uint32_t>(rng() % (p - 1));
      HypersurfaceSpec spec{ctx, d, {}, FieldElement{b}};
      for (auto ai : a) spec.a.emplace_back(ai);
      const auto expected = prime_field_oracle(p, d, a, b);
      EXPECT_EQ(count_bruteforce(spec, BruteforceRoute::kNaive).n_points, expected);
      EXPECT_EQ(count_bruteforce(spec, BruteforceRoute::kConvolution).n_points, expected);
      EXPECT_EQ(count_charsum(spec).n_points, expected);
    }
  }
}

TEST(Count, BruteforceRoutesAgreeOnExtensionFields) {
  for (auto [p, n] : {std::pair{2u, 4u}, {3u, 2u}, {2u, 3u}, {5u, 2u}}) {
    const auto ctx = build_field(p, n);
    for (auto dd : divisors(ctx->q() - 1)) {
      if (dd < 2) continue;
      const auto d = static_cast<std::uint32_t>(dd);
      HypersurfaceSpec spec{ctx, {d, d, d}, {ctx->one(), ctx->generator(), ctx->exp(2)}, ctx->exp(3)};
      const auto naive = count_bruteforce(spec, BruteforceRoute::kNaive).n_points;
      EXPECT_EQ(count_bruteforce(spec, BruteforceRoute::kConvolution).n_points, naive);
      EXPECT_EQ(count_charsum(spec).n_points, naive);
    }
  }
}

TEST(Count, FormulaMatchesBruteforceWhereDefined) {
  std::size_t compared = 0;
  for (auto [p, n] : {std::pair{2u, 2u}, {3u, 2u}, {5u, 2u}, {7u, 2u}, {2u, 4u}, {3u, 4u}, {2u, 6u}}) {
    const auto ctx = build_field(p, n);
    Dims usable;
    for (auto dd : divisors(ctx->q() - 1)) {
      if (dd >= 2 && dd <= 12) usable.push_back(static_cast<std::uint32_t>(dd));
    }
    for (auto d1 : usable) {
      for (auto d2 : usable) {
        for (std::uint32_t c = 0; c < 3; ++c) {
          HypersurfaceSpec spec{ctx, {d1, d2}, {ctx->one(), ctx->exp(c)}, ctx->exp(c + 1)};
          const auto common = common_admissibility(*ctx, spec.d);
          if (!common.epsilon) {
            EXPECT_THROW(count_formula(spec), Error);
            continue;
          }
          EXPECT_EQ(count_formula(spec).n_points, count_bruteforce(spec).n_points)
              << "q=" << ctx->q() << " d=" << d1 << "," << d2 << " c=" << c;
          ++compared;
        }
      }
    }
  }
  EXPECT_GT(compared, 50u);
}

TEST(Count, FormulaErrors) {
  const auto f64 = build_field(2, 6);
  EXPECT_EQ(code_of([&] { count_formula(ones(f64, {7, 7})); }), ErrorCode::kNotAdmissible);
  const auto f81 = build_field(3, 4);
  EXPECT_EQ(code_of([&] { count_formula(ones(f81, {4, 10})); }), ErrorCode::kNoCommonR);
  const auto f27 = build_field(3, 3);
  EXPECT_EQ(code_of([&] { count_formula(ones(f27, {2, 2})); }), ErrorCode::kParityViolation);
}

TEST(Count, GeneratorInvariance) {
  std::size_t checked = 0;
  for (auto [p, n] : {std::pair{3u, 2u}, {7u, 2u}, {3u, 4u}}) {
    const auto base = build_field(p, n);
    std::vector<HypersurfaceSpec> specs;
    for (const Dims& d : {Dims{4, 4}, Dims{2, 4, 4}, Dims{4, 4, 4, 4}}) {
      if ((base->q() - 1) % 4 != 0) continue;
      for (std::uint32_t c = 0; c < 4; ++c) {
        HypersurfaceSpec spec = ones(base, d);
        spec.a.back() = base->exp(c);
        spec.b = base->exp(c + 1);
        if (common_admissibility(*base, spec.d).epsilon) specs.push_back(spec);
      }
    }
    for (std::uint32_t g = 2; g < base->q(); ++g) {
      FieldOptions options;
      options.generator = g;
      FieldPtr alt;
      try {
        alt = build_field(p, n, options);
      } catch (const Error&) {
        continue;  // not primitive
      }
      for (const auto& spec : specs) {
        HypersurfaceSpec moved = spec;
        moved.ctx = alt;
        EXPECT_EQ(count_formula(moved).n_points, count_formula(spec).n_points) << "g=" << g;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Count, ChangeOfVariablesInvariance) {
  std::mt19937_64 rng(23);
  const auto ctx = build_field(2, 4);
  for (int t = 0; t < 50; ++t) {
    HypersurfaceSpec spec{ctx, {3, 5, 15}, {}, FieldElement{1 + static_cast<std::uint32_t>(rng() % 15)}};
    for (int i = 0; i < 3; ++i) spec.a.emplace_back(1 + static_cast<std::uint32_t>(rng() % 15));
    const auto before = count_bruteforce(spec).n_points;
    for (std::size_t i = 0; i < 3; ++i) {
      const FieldElement c{1 + static_cast<std::uint32_t>(rng() % 15)};
      spec.a[i] = ctx->mul(spec.a[i], ctx->pow(c, spec.d[i]));
    }
    EXPECT_EQ(count_bruteforce(spec).n_points, before);
    EXPECT_EQ(count_charsum(spec).n_points, before);
  }
}

TEST(Count, BoundContainment) {
  for (auto [p, n] : {std::pair{2u, 4u}, {3u, 2u}, {7u, 1u}, {13u, 1u}, {3u, 3u}}) {
    const auto ctx = build_field(p, n);
    for (auto dd : divisors(ctx->q() - 1)) {
      if (dd < 2) continue;
      const auto d = static_cast<std::uint32_t>(dd);
      for (const Dims& dims : {Dims{d, d}, Dims{d, d, d}}) {
        const auto spec = ones(ctx, dims);
        const auto count = count_bruteforce(spec).n_points;
        const auto bound = weil_bound(ctx->q(), dims);
        EXPECT_GE(count, bound.lower);
        EXPECT_LE(count, bound.upper);
      }
    }
  }
}

TEST(Count, SpecValidation) {
  const auto f9 = build_field(3, 2);
  EXPECT_EQ(code_of([&] { ones(f9, {4}).validate(); }), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code_of([&] { ones(f9, {4, 3}).validate(); }), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code_of([&] { ones(f9, {4, 1}).validate(); }), ErrorCode::kInvalidSpec);
  auto zero_a = ones(f9, {4, 4});
  zero_a.a[0] = f9->zero();
  EXPECT_EQ(code_of([&] { zero_a.validate(); }), ErrorCode::kInvalidSpec);
  auto zero_b = ones(f9, {4, 4});
  zero_b.b = f9->zero();
  EXPECT_EQ(code_of([&] { count_bruteforce(zero_b); }), ErrorCode::kInvalidSpec);
  EXPECT_EQ(parse_count_method("brute"), CountMethod::kBruteforce);
  EXPECT_EQ(parse_count_method("charsum"), CountMethod::kCharsum);
  EXPECT_THROW(parse_count_method("guess"), Error);
}

TEST(Count, BruteforceGuard) {
  const auto big = build_field(2, 20);
  EXPECT_FALSE(bruteforce_feasible(ones(big, {3, 3, 3, 3, 3})));
  EXPECT_EQ(code_of([&] { count_bruteforce(ones(big, {3, 3, 3, 3, 3})); }), ErrorCode::kTooLarge);
}

TEST(Classify, Examples) {
  const auto f81 = build_field(3, 4);
  const auto minimal = classify(ones(f81, {4, 4}));
  EXPECT_EQ(minimal.status, Status::kMinimal);
  EXPECT_EQ(minimal.r, 1u);
  EXPECT_EQ(minimal.epsilon, 1);
  ASSERT_TRUE(minimal.verified_count.has_value());
  EXPECT_EQ(minimal.verified_count->n_points, 24);
  EXPECT_TRUE(minimal.reasons.empty());

  const auto f9 = build_field(3, 2);
  const auto interior = classify(ones(f9, {4, 4}));
  EXPECT_EQ(interior.status, Status::kNotAttained);
  EXPECT_EQ(interior.epsilon, -1);
  EXPECT_EQ(interior.reasons, std::vector<std::string>{"n_over_2r_odd"});

  const auto maximal = classify(ones(f81, {4, 4, 4, 4, 4}));
  EXPECT_EQ(maximal.status, Status::kMaximal);
  EXPECT_EQ(maximal.verified_count->n_points, maximal.bound.upper);

  const auto s3 = classify(ones(f81, {4, 4, 4}), ClassifyOptions{false});
  EXPECT_EQ(s3.status, Status::kHypothesesNotMet);
  EXPECT_EQ(s3.reasons, std::vector<std::string>{"s_equals_3"});
  EXPECT_FALSE(s3.verified_count.has_value());

  const auto low_gcd = classify(ones(f81, {2, 4, 4, 4}));
  EXPECT_EQ(low_gcd.status, Status::kHypothesesNotMet);
  EXPECT_EQ(low_gcd.reasons, std::vector<std::string>{"gcd_at_most_2"});

  auto mismatch = ones(f81, {4, 4});
  mismatch.a[1] = f81->generator();
  const auto shifted = classify(mismatch);
  EXPECT_EQ(shifted.status, Status::kNotAttained);
  EXPECT_EQ(shifted.theta_matches, (std::vector<bool>{true, false}));
  EXPECT_EQ(shifted.reasons, std::vector<std::string>{"theta_mismatch:2"});
}

TEST(Classify, StatusNames) {
  for (auto st : {Status::kMaximal, Status::kMinimal, Status::kNotAttained, Status::kHypothesesNotMet}) {
    EXPECT_EQ(parse_status(to_string(st)), st);
  }
}

TEST(Attainment, Examples) {
  const auto f81 = build_field(3, 4);
  const auto spec81 = ones(f81, {4, 4});
  EXPECT_EQ(attainment_check(spec81, count_bruteforce(spec81)).kind, Attainment::kMinimalObserved);
  const auto f9 = build_field(3, 2);
  const auto spec9 = ones(f9, {4, 4});
  EXPECT_EQ(attainment_check(spec9, count_bruteforce(spec9)).kind, Attainment::kInterior);
  const CountResult center{81, CountMethod::kBruteforce, 0.0};
  EXPECT_EQ(attainment_check(spec81, center).kind, Attainment::kInterior);
  const auto f27 = build_field(3, 3);
  const auto odd = ones(f27, {2, 2});
  const auto odd_result = attainment_check(odd, count_bruteforce(odd));
  EXPECT_TRUE(odd_result.exact_comparison_unsupported);
  EXPECT_EQ(odd_result.kind, Attainment::kInterior);
}
