#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fermat/arith.hpp"
#include "fermat/char_sums.hpp"
#include "fermat/error.hpp"
#include "fermat/numtheory.hpp"

using namespace fermat;

namespace {

// Gauss sum straight from the definition, accumulated in long double.
ComplexValue gauss_oracle(const FieldPtr& ctx, std::uint32_t d, std::uint32_t j) {
  const long double tau = 2 * std::acos(-1.0L);
  std::complex<long double> sum = 0;
  for (std::uint32_t x = 1; x < ctx->q(); ++x) {
    const FieldElement e{x};
    const long double angle = tau * (static_cast<long double>(ctx->trace(e)) / ctx->p() +
                                     static_cast<long double>(std::uint64_t{j} * ctx->dlog(e) % d) / d);
    sum += std::polar(1.0L, angle);
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Jacobi sum by nested loops over the first s - 1 coordinates.
ComplexValue jacobi_oracle(const std::vector<MultiplicativeCharacter>& chars, FieldElement b) {
  const auto& ctx = chars.front().context();
  const std::size_t s = chars.size();
  ComplexValue total = 0;
  std::vector<std::uint32_t> idx(s - 1, 0);
  while (true) {
    FieldElement rest = b;
    ComplexValue term = 1;
    for (std::size_t i = 0; i + 1 < s; ++i) {
      term *= chars[i](FieldElement{idx[i]});
      rest = ctx->sub(rest, FieldElement{idx[i]});
    }
    total += term * chars[s - 1](rest);
    std::size_t i = s - 1;
    while (i-- > 0) {
      if (++idx[i] < ctx->q()) break;
      idx[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return total;
}

}  // namespace

TEST(GaussSum, TrivialCharacterIsMinusOne) {
  for (auto [p, n] : {std::pair{2u, 3u}, {5u, 1u}, {3u, 4u}}) {
    const auto ctx = build_field(p, n);
    EXPECT_LT(std::abs(gauss_sum(MultiplicativeCharacter::trivial(ctx)).value - ComplexValue(-1, 0)), 1e-9);
  }
}

TEST(GaussSum, MatchesOracleAndModulus) {
  for (auto [p, n] : {std::pair{2u, 4u}, {3u, 2u}, {7u, 1u}, {5u, 2u}, {2u, 6u}, {3u, 4u}}) {
    const auto ctx = build_field(p, n);
    const double sq = std::sqrt(static_cast<double>(ctx->q()));
    const GaussSumTable table(ctx, ctx->group_order());
    for (auto dd : divisors(ctx->q() - 1)) {
      const auto d = static_cast<std::uint32_t>(dd);
      for (std::uint32_t j = 1; j < d; ++j) {
        const MultiplicativeCharacter chi(ctx, d, j);
        const auto g = gauss_sum(chi).value;
        EXPECT_LT(std::abs(g - gauss_oracle(ctx, d, j)), 1e-9 * ctx->q());
        EXPECT_LT(std::abs(table.of(chi) - g), 1e-9 * ctx->q());
        if (chi.order() > 1) EXPECT_NEAR(std::abs(g) / sq, 1.0, 1e-9);
        const auto product = g * gauss_sum(chi.conj()).value;
        const auto expected = chi(ctx->neg(ctx->one())) * static_cast<double>(ctx->q());
        if (chi.order() > 1) EXPECT_LT(std::abs(product - expected), 1e-6 * ctx->q());
      }
    }
  }
}

TEST(GaussSum, TableRejectsForeignCharacter) {
  const auto ctx = build_field(3, 2);
  const GaussSumTable table(ctx, 4);
  EXPECT_THROW(table.of(MultiplicativeCharacter(ctx, 8, 1)), Error);
  EXPECT_NO_THROW(table.of(MultiplicativeCharacter(ctx, 8, 2)));
}

TEST(QuadraticGauss, ClosedFormExamples) {
  EXPECT_LT(std::abs(quadratic_gauss_closed_form(5, 1) - ComplexValue(std::sqrt(5.0), 0)), 1e-12);
  EXPECT_LT(std::abs(quadratic_gauss_closed_form(3, 2) - ComplexValue(3, 0)), 1e-12);
  EXPECT_LT(std::abs(quadratic_gauss_closed_form(7, 1) - ComplexValue(0, std::sqrt(7.0))), 1e-12);
  EXPECT_THROW(quadratic_gauss_closed_form(2, 3), Error);
}

TEST(QuadraticGauss, ClosedFormMatchesSum) {
  for (auto p : {3u, 5u, 7u, 13u}) {
    for (std::uint32_t n = 1; n <= 4; ++n) {
      const auto ctx = build_field(p, n);
      const auto g = gauss_sum(MultiplicativeCharacter(ctx, 2, 1)).value;
      const auto closed = quadratic_gauss_closed_form(p, n);
      EXPECT_LT(std::abs(g - closed) / std::abs(closed), 1e-9) << p << "^" << n;
    }
  }
}

TEST(Jacobi, TrivialCharactersCountPairs) {
  for (auto [p, n] : {std::pair{7u, 1u}, {3u, 2u}, {2u, 3u}}) {
    const auto ctx = build_field(p, n);
    const std::vector chars(2, MultiplicativeCharacter::trivial(ctx));
    EXPECT_LT(std::abs(jacobi_sum_direct(chars, ctx->one()) - ComplexValue(ctx->q() - 2.0, 0)), 1e-9);
  }
}

TEST(Jacobi, DirectMatchesOracleIncludingZero) {
  const auto ctx = build_field(7, 1);
  for (std::uint32_t j = 1; j < 6; ++j) {
    const MultiplicativeCharacter l1(ctx, 6, j);
    const std::vector chars{l1, l1.conj()};
    for (std::uint32_t b = 0; b < 7; ++b) {
      EXPECT_LT(std::abs(jacobi_sum_direct(chars, FieldElement{b}) - jacobi_oracle(chars, FieldElement{b})), 1e-9);
    }
  }
}

TEST(Jacobi, BReductionExamples) {
  const auto f7 = build_field(7, 1);
  const MultiplicativeCharacter chi3(f7, 3, 1);
  const std::vector pair7{chi3, chi3};
  EXPECT_LT(std::abs(jacobi_b_reduction(pair7, FieldElement{2}) - jacobi_oracle(pair7, FieldElement{2})), 1e-9);
  EXPECT_LT(std::abs(jacobi_b_reduction(pair7, f7->one()) - jacobi_sum_direct(pair7, f7->one())), 1e-9);
  const auto f9 = build_field(3, 2);
  const std::vector pair9{MultiplicativeCharacter(f9, 4, 1), MultiplicativeCharacter(f9, 4, 2)};
  EXPECT_LT(std::abs(jacobi_b_reduction(pair9, f9->generator()) - jacobi_oracle(pair9, f9->generator())), 1e-9);
  EXPECT_THROW(jacobi_b_reduction(pair9, f9->zero()), Error);
}

TEST(Jacobi, ConjugatePairIsMinusCharacterAtMinusOne) {
  for (auto [p, n] : {std::pair{13u, 1u}, {3u, 2u}, {5u, 2u}}) {
    const auto ctx = build_field(p, n);
    for (std::uint32_t j = 1; j < ctx->q() - 1; ++j) {
      const MultiplicativeCharacter l(ctx, ctx->q() - 1, j);
      const std::vector chars{l, l.conj()};
      const auto expected = -l(ctx->neg(ctx->one()));
      EXPECT_LT(std::abs(jacobi_from_gauss(chars) - expected), 1e-9);
      EXPECT_LT(std::abs(jacobi_sum_direct(chars, ctx->one()) - expected), 1e-9);
    }
  }
}

TEST(Jacobi, GaussRouteMatchesDirectAndModulusSplit) {
  std::mt19937_64 rng(5);
  for (auto [p, n] : {std::pair{5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}, {13u, 1u}, {2u, 4u}}) {
    const auto ctx = build_field(p, n);
    const std::uint32_t order = ctx->group_order();
    for (std::size_t s = 2; s <= 3; ++s) {
      for (int t = 0; t < 40; ++t) {
        std::vector<MultiplicativeCharacter> chars;
        for (std::size_t i = 0; i < s; ++i) chars.emplace_back(ctx, order, 1 + rng() % (order - 1));
        const auto via_gauss = jacobi_from_gauss(chars);
        const double tol = 1e-6 * std::pow(ctx->q(), (s - 1) / 2.0);
        EXPECT_LT(std::abs(via_gauss - jacobi_oracle(chars, ctx->one())), tol);
        EXPECT_NEAR(std::abs(via_gauss), jacobi_expected_modulus(chars), tol);
      }
    }
  }
}

TEST(Jacobi, GuardsAndErrors) {
  const auto ctx = build_field(3, 2);
  const std::vector with_trivial{MultiplicativeCharacter::trivial(ctx), MultiplicativeCharacter(ctx, 4, 1)};
  EXPECT_THROW(jacobi_from_gauss(with_trivial), Error);
  const auto big = build_field(2, 12);
  const std::vector many(4, MultiplicativeCharacter(big, 3, 1));
  try {
    jacobi_sum_direct(many, big->one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(Purity, Examples) {
  EXPECT_EQ(purity_order(ComplexValue(-2.5, 0), 10).order, 1u);
  EXPECT_EQ(purity_order(ComplexValue(0, std::sqrt(3.0)), 10).order, 2u);
  EXPECT_EQ(purity_order(std::polar(9.0, 2 * M_PI / 5), 20).order, 5u);
  const auto irrational = purity_order(std::polar(1.0, 1.0), 1000);
  EXPECT_FALSE(irrational.is_pure);
  EXPECT_FALSE(irrational.order.has_value());
  EXPECT_EQ(irrational.search_bound, 1000u);
}

TEST(Purity, AgreesWithLinearScan) {
  auto scan = [](ComplexValue z, std::uint64_t k_max) -> std::optional<std::uint64_t> {
    const long double turns = std::atan2(static_cast<long double>(z.imag()), static_cast<long double>(z.real())) /
                              std::acos(-1.0L);
    for (std::uint64_t k = 1; k <= k_max; ++k) {
      const long double t = turns * k;
      if (std::fabs(std::sin(std::acos(-1.0L) * (t - std::nearbyint(t)))) < kPurityTolerance) return k;
    }
    return std::nullopt;
  };
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  for (int t = 0; t < 300; ++t) {
    const ComplexValue z = std::polar(3.0, angle(rng));
    EXPECT_EQ(purity_order(z, 5000).order, scan(z, 5000));
  }
  for (std::uint64_t den = 1; den <= 120; ++den) {
    for (std::uint64_t num = 0; num < 2 * den; num += 7) {
      const ComplexValue z = std::polar(2.0, M_PI * static_cast<double>(num) / static_cast<double>(den));
      EXPECT_EQ(purity_order(z, 1000).order, scan(z, 1000)) << num << "/" << den;
    }
  }
  const auto ctx = build_field(5, 3);
  for (std::uint32_t j = 1; j < 31; ++j) {
    const auto g = gauss_sum(MultiplicativeCharacter(ctx, 31, j)).value;
    EXPECT_EQ(purity_order(g, 4 * 31 * 5).order, scan(g, 4 * 31 * 5));
  }
}

TEST(Purity, SuiteExamples) {
  const auto f64 = build_field(2, 6);
  const auto pure9 = gauss_purity_suite(f64, 9);
  EXPECT_TRUE(pure9.all_pure);
  EXPECT_EQ(pure9.admissible_r, 3u);
  EXPECT_EQ(pure9.reports.size(), 8u);
  const auto mixed7 = gauss_purity_suite(f64, 7);
  EXPECT_FALSE(mixed7.all_pure);
  EXPECT_FALSE(mixed7.admissible_r.has_value());
  EXPECT_TRUE(mixed7.equivalence_holds());
  const auto f81 = build_field(3, 4);
  const auto pure4 = gauss_purity_suite(f81, 4);
  EXPECT_TRUE(pure4.all_pure);
  EXPECT_EQ(pure4.admissible_r, 1u);
}

TEST(DavenportHasse, Examples) {
  const auto f9 = build_field(3, 2);
  const auto chi8 = MultiplicativeCharacter(f9, 8, 1);
  const auto trivial = davenport_hasse_check(MultiplicativeCharacter::trivial(f9), 1, 1, chi8);
  EXPECT_EQ(trivial.purity.order, 1u);
  EXPECT_NEAR(trivial.log_modulus, 0.0, 1e-12);
  EXPECT_TRUE(davenport_hasse_check(MultiplicativeCharacter(f9, 4, 1), 4, 1, chi8).purity.is_pure);
  const auto f13 = build_field(13, 1);
  const auto same = davenport_hasse_check(MultiplicativeCharacter(f13, 3, 1), 3, 3, MultiplicativeCharacter(f13, 12, 5));
  EXPECT_EQ(same.purity.order, 1u);
  EXPECT_LT(std::abs(same.phase - ComplexValue(1, 0)), 1e-9);
}

TEST(DavenportHasse, OrderMismatch) {
  const auto f9 = build_field(3, 2);
  try {
    davenport_hasse_check(MultiplicativeCharacter(f9, 4, 2), 4, 1, MultiplicativeCharacter(f9, 8, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOrderMismatch);
  }
}

TEST(IdentitySuite, PassesOnSmallFields) {
  for (auto [p, n] : {std::pair{3u, 2u}, {2u, 4u}, {7u, 1u}, {5u, 2u}}) {
    for (const auto& check : run_identity_suite(build_field(p, n))) {
      EXPECT_TRUE(check.pass) << p << "^" << n << " " << check.name << " residual " << check.max_residual;
    }
  }
}
