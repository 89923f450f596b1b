#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tcfp/modforms.hpp"
#include "tcfp/qexp.hpp"

using namespace tcfp;

namespace {

QExpansion series(std::initializer_list<int> c) {
  std::vector<Rational> v;
  for (int x : c) v.emplace_back(x);
  return QExpansion(v);
}

QExpansion random_series(std::mt19937_64& rng, int prec) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  std::vector<Rational> v;
  for (int i = 0; i <= prec; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    v.push_back(q);
  }
  return QExpansion(v);
}

}  // namespace

TEST(QExpAdd, CancellationAndIdentity) {
  EXPECT_EQ(series({1, 1}) + series({1, -1}), series({2, 0}));
  const QExpansion f = series({0, 3, -5, 7});
  EXPECT_EQ(f + QExpansion::zero(3), f);
}

TEST(QExpAdd, EisensteinSumAgainstDivisorSums) {
  const auto s = eisenstein(4, 5) + eisenstein(6, 5);
  EXPECT_EQ(s[1], Rational(240 * oracle::sigma(3, 1) - 504 * oracle::sigma(5, 1)));
  EXPECT_EQ(s[1], Rational(-264));
}

TEST(QExpAdd, PrecisionIsMinimum) {
  EXPECT_EQ((series({1, 2, 3}) + series({1, 2, 3, 4, 5})).prec(), 2);
  EXPECT_EQ((series({1, 2, 3}) * series({1, 2, 3, 4, 5})).prec(), 2);
}

TEST(QExpMul, DifferenceOfSquares) { EXPECT_EQ(series({1, 1, 0}) * series({1, -1, 0}), series({1, 0, -1})); }

TEST(QExpMul, MultiplicativeIdentity) {
  const QExpansion f = series({0, 1, -24, 252});
  EXPECT_EQ(f * QExpansion::one(3), f);
}

TEST(QExpMul, DiscriminantIdentityAgainstProductOracle) {
  const int prec = 40;
  const auto lhs = pow(eisenstein(4, prec), 3) - pow(eisenstein(6, prec), 2);
  const auto ref = oracle::delta_product(prec);
  for (int n = 0; n <= prec; ++n) {
    EXPECT_EQ(lhs[n], Rational(1728) * Rational(static_cast<long>(ref[n]))) << "n=" << n;
  }
}

TEST(QExpPow, Binomials) {
  EXPECT_EQ(pow(series({1, -1, 0}), 2), series({1, -2, 1}));
  EXPECT_EQ(pow(series({1, -1, 0, 0}), 24)[1], Rational(-24));
  EXPECT_EQ(pow(series({3, 1, 4}), 0), QExpansion::one(2));
}

TEST(QExpAccess, BeyondPrecisionIsAnError) {
  const QExpansion f = series({1, 2});
  EXPECT_THROW((void)f[2], PrecisionError);
  EXPECT_THROW((void)f[-1], PrecisionError);
  EXPECT_THROW((void)f.truncated(3), PrecisionError);
  EXPECT_THROW(QExpansion(std::vector<Rational>{}), DomainError);
}

TEST(QExpEval, ZeroSeries) {
  const auto e = eval<long double>(QExpansion::zero(10), 12, {0.1L, 0.9L});
  EXPECT_EQ(e.value, std::complex<long double>(0));
  EXPECT_EQ(e.tail_estimate, 0);
}

TEST(QExpEval, DeltaAtIAgainstProduct) {
  const auto e = eval<long double>(delta(30), 12, {0, 1});
  const auto ref = oracle::delta_value({0, 1});
  EXPECT_NEAR(static_cast<double>(std::abs(e.value - ref) / std::abs(ref)), 0, 1e-15);
  const long double lead = std::exp(-2 * std::numbers::pi_v<long double>);
  EXPECT_NEAR(static_cast<double>(lead), 1.8674e-3, 1e-7);
  EXPECT_NEAR(static_cast<double>(std::abs(e.value) / lead), 1.0, 0.05);
}

TEST(QExpEval, DoublingPrecisionStaysWithinTail) {
  const std::complex<long double> tau{0.1L, 0.6L};
  const auto coarse = eval<long double>(delta(20), 12, tau);
  const auto fine = eval<long double>(delta(40), 12, tau);
  EXPECT_GT(coarse.tail_estimate, 0);
  EXPECT_LE(std::abs(fine.value - coarse.value), coarse.tail_estimate);
}

TEST(QExpEval, RejectsLowerHalfPlane) {
  EXPECT_THROW(eval<double>(delta(5), 12, {0.0, 0.0}), DomainError);
  EXPECT_THROW(eval<double>(delta(5), 12, {0.3, -1.0}), DomainError);
}

TEST(QExpProperties, RingAxiomsOnRandomSeries) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(rng, 12), b = random_series(rng, 9), c = random_series(rng, 15);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(QExpProperties, EvalIsLinear) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_series(rng, 15), b = random_series(rng, 15);
    const std::complex<long double> tau{0.2L, 1.1L};
    const auto sum = eval<long double>(a + b, 12, tau).value;
    const auto parts = eval<long double>(a, 12, tau).value + eval<long double>(b, 12, tau).value;
    EXPECT_LE(std::abs(sum - parts), 1e-15L * (1 + std::abs(sum)));
  }
}

TEST(QExpProperties, CuspFormBoundedByCoefficientSum) {
  for (int k : {12, 16, 24}) {
    for (const auto& f : cusp_basis(k, 30).basis) {
      long double abs_sum = 0;
      for (int n = 1; n <= f.prec(); ++n) abs_sum += std::fabs(to_long_double(f[n]));
      for (long double v : {0.87L, 1.0L, 2.5L}) {
        const auto e = eval<long double>(f, k, {0.3L, v});
        EXPECT_LE(std::abs(e.value), abs_sum * std::exp(-2 * std::numbers::pi_v<long double> * v) * (1 + 1e-15L));
      }
    }
  }
}
