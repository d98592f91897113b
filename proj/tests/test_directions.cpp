#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hybridplus/directions.hpp"
#include "hybridplus/vector_ops.hpp"

namespace hybridplus {
namespace {

constexpr double kLo = 1e-10;
constexpr double kHi = 1e10;

TEST(SpectralDiagonal, InRangeQuotientAndZeroStep) {
  const std::vector<double> s{1.0, 0.0}, y{5.0, 3.0};
  const auto sc = spectral_diagonal(s, y, kLo, kHi);
  EXPECT_EQ(sc.b, (std::vector<double>{5.0, 1.0}));
}

TEST(SpectralDiagonal, ClampsLargeQuotientToUpper) {
  const std::vector<double> s{1e-20}, y{1.0};
  EXPECT_EQ(spectral_diagonal(s, y, kLo, kHi).b[0], kHi);
}

TEST(SpectralDiagonal, ClampsNegativeQuotientToLower) {
  const std::vector<double> s{1.0}, y{-3.0};
  EXPECT_EQ(spectral_diagonal(s, y, kLo, kHi).b[0], kLo);
}

TEST(SpectralDiagonal, SubnormalStepTakesQuotientBranch) {
  const double tiny = std::numeric_limits<double>::denorm_min();
  const std::vector<double> s{tiny, -tiny}, y{1.0, 1.0};
  const auto b = spectral_diagonal(s, y, kLo, kHi).b;
  EXPECT_EQ(b[0], kHi);  // +inf quotient
  EXPECT_EQ(b[1], kLo);  // -inf quotient
}

TEST(SpectralDiagonal, RejectsBadBoundsAndLengths) {
  const std::vector<double> one{1.0}, two{1.0, 2.0};
  EXPECT_THROW(spectral_diagonal(one, two, kLo, kHi), std::invalid_argument);
  EXPECT_THROW(spectral_diagonal(one, one, 0.0, kHi), std::invalid_argument);
  EXPECT_THROW(spectral_diagonal(one, one, 1.0, kHi), std::invalid_argument);
  EXPECT_THROW(spectral_diagonal(one, one, 0.5, 0.9), std::invalid_argument);
}

TEST(SpectralDiagonal, PropertyBoundsHoldForArbitraryInputs) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_real_distribution<double> mag(-300.0, 300.0);
  std::bernoulli_distribution neg(0.5);
  auto draw = [&]() {
    switch (kind(gen)) {
      case 0: return 0.0;
      case 1: return std::numeric_limits<double>::denorm_min() * (neg(gen) ? -1 : 1);
      case 2: return std::numeric_limits<double>::max() * (neg(gen) ? -1 : 1);
      default: return std::pow(10.0, mag(gen)) * (neg(gen) ? -1 : 1);
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(64), y(64);
    for (auto& v : s) v = draw();
    for (auto& v : y) v = draw();
    const auto sc = spectral_diagonal(s, y, kLo, kHi);
    for (std::size_t i = 0; i < s.size(); ++i) {
      ASSERT_GE(sc.b[i], kLo);
      ASSERT_LE(sc.b[i], kHi);
      if (s[i] == 0.0) ASSERT_EQ(sc.b[i], 1.0);
    }
  }
}

TEST(HybridBeta, NegativeNumeratorGivesZero) {
  // <F, y> = -2
  const std::vector<double> F{-2.0, 0.0}, y{1.0, 0.0}, d{5.0, 5.0}, Fp{1.0, 1.0}, s{1.0, 1.0};
  EXPECT_EQ(hybrid_beta({F, Fp, d, s, y, 1}), 0.0);
}

TEST(HybridBeta, DenominatorFallsBackToPreviousResidualNorm) {
  const std::vector<double> F{1.0, 0.0}, y{1.0, 0.0}, d{0.0, 1.0}, Fp{1.0, 1.0}, s{1.0, 1.0};
  EXPECT_EQ(hybrid_beta({F, Fp, d, s, y, 1}), 0.5);
}

TEST(HybridBeta, DenominatorUsesCurvatureWhenLarger) {
  const std::vector<double> F{2.0, 0.0}, y{1.0, 0.0}, d{3.0, 0.0}, Fp{1.0, 0.0}, s{1.0, 1.0};
  EXPECT_DOUBLE_EQ(hybrid_beta({F, Fp, d, s, y, 1}), 2.0 / 3.0);
}

TEST(HybridBeta, PropertyNonnegativeAndZeroWhenNumeratorNonpositive) {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> nd(0.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> F(8), Fp(8), d(8), s(8), y(8);
    for (auto* v : {&F, &Fp, &d, &s}) {
      for (auto& e : *v) e = nd(gen);
    }
    for (std::size_t i = 0; i < 8; ++i) y[i] = F[i] - Fp[i];
    const double beta = hybrid_beta({F, Fp, d, s, y, 3});
    ASSERT_GE(beta, 0.0);
    if (dot(F, y) <= 0.0) ASSERT_EQ(beta, 0.0);
  }
}

TEST(SearchDirection, FirstIterationIsNegatedResidual) {
  const std::vector<double> F{3.0, -1.0};
  const DirectionContext ctx{F, {}, {}, {}, {}, 0};
  EXPECT_EQ(search_direction(ctx, {}), (std::vector<double>{-3.0, 1.0}));
}

TEST(SearchDirection, IdentityScalingWithZeroBetaIsNegatedResidual) {
  // <F, y> < 0 forces beta = 0.
  const std::vector<double> F{0.5, 0.5}, Fp{1.0, 1.0}, y{-0.5, -0.5}, d{7.0, 7.0}, s{1.0, 1.0};
  ASSERT_EQ(hybrid_beta({F, Fp, d, s, y, 1}), 0.0);
  const DiagonalScaling unit{{1.0, 1.0}, kLo, kHi};
  EXPECT_EQ(search_direction({F, Fp, d, s, y, 1}, unit), (std::vector<double>{-0.5, -0.5}));
}

TEST(SearchDirection, ScaledResidualPlusConjugateTerm) {
  const std::vector<double> F{2.0, 0.0}, d{4.0, 4.0};
  const DiagonalScaling sc{{2.0, 1.0}, kLo, kHi};
  EXPECT_EQ(assemble_direction(F, sc, 0.5, d), (std::vector<double>{1.0, 2.0}));
}

TEST(DiagonalScaling, PropertyScaledResidualBoundedByLowerClamp) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> logq(-12.0, 12.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(32), y(32), F(32);
    for (std::size_t i = 0; i < 32; ++i) {
      s[i] = nd(gen);
      y[i] = s[i] * std::pow(10.0, logq(gen)) * (nd(gen) > 0 ? 1 : -1);
      F[i] = nd(gen);
    }
    const auto sc = spectral_diagonal(s, y, kLo, kHi);
    ASSERT_LE(norm(sc.apply(F)), norm(F) / kLo * (1 + 1e-15));
  }
}

}  // namespace
}  // namespace hybridplus
