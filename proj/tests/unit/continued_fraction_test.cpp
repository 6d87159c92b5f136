#include "pcorr/continued_fraction.hpp"

#include <gtest/gtest.h>

#include "pcorr/errors.hpp"
#include "support.hpp"

namespace pcorr {
namespace {

using testing::Gen;
using testing::kPropertyCases;

std::vector<BigInt> ints(std::initializer_list<long long> xs) {
  return {xs.begin(), xs.end()};
}

std::vector<BigInt> qs(const ContinuedFraction& cf) {
  std::vector<BigInt> out;
  for (const Convergent& c : cf.convergents()) out.push_back(c.q);
  return out;
}

TEST(AlphaFromCf, SingleStep) {
  const auto quotients = ints({2});
  const AlphaWithCf a = alpha_from_cf(0, quotients);
  EXPECT_EQ(a.alpha.to_rational(), BigRational(1, 2));
  ASSERT_EQ(a.cf.convergents().size(), 2u);
  EXPECT_EQ(a.cf.convergents()[0].p, 0);
  EXPECT_EQ(a.cf.convergents()[0].q, 1);
  EXPECT_EQ(a.cf.convergents()[1].p, 1);
  EXPECT_EQ(a.cf.convergents()[1].q, 2);
}

TEST(AlphaFromCf, ThreeFifths) {
  const auto quotients = ints({1, 1, 1, 1});
  const AlphaWithCf a = alpha_from_cf(0, quotients, 64);
  EXPECT_EQ(qs(a.cf), ints({1, 1, 2, 3, 5}));
  EXPECT_EQ(a.cf.convergents().back().p, 3);
  EXPECT_LT(abs(a.alpha.to_rational() - BigRational(3, 5)), BigRational(1, pow2(64)));
}

TEST(AlphaFromCf, SqrtTwoApproximant) {
  const auto quotients = ints({2, 2, 2, 2});
  const AlphaWithCf a = alpha_from_cf(1, quotients);
  EXPECT_EQ(a.cf.convergents().back().p, 41);
  EXPECT_EQ(a.cf.convergents().back().q, 29);
  // |41/29 - sqrt 2| < 1/(29 * 70): compare squares exactly.
  const BigRational x(41, 29), eps(1, 29 * 70);
  EXPECT_LT((x - eps) * (x - eps), BigRational(2));
  EXPECT_GT((x + eps) * (x + eps), BigRational(2));
}

TEST(AlphaFromCf, Errors) {
  EXPECT_THROW(alpha_from_cf(0, std::vector<BigInt>{}), InvalidArgument);
  EXPECT_THROW(alpha_from_cf(0, ints({1, 0, 2})), InvalidArgument);
  EXPECT_THROW(ContinuedFraction(-1, ints({2})), InvalidArgument);
}

TEST(CfExpand, Examples) {
  EXPECT_EQ(cf_expand(FixedReal::parse("1/2"), 10).quotients(), ints({2}));
  EXPECT_EQ(cf_expand(FixedReal::parse("1/2"), 10).a0(), 0);

  const ContinuedFraction g = cf_expand(FixedReal::golden_ratio(192), 40);
  EXPECT_EQ(g.a0(), 1);
  ASSERT_EQ(g.quotients().size(), 40u);
  for (const BigInt& a : g.quotients()) EXPECT_EQ(a, 1);

  const ContinuedFraction r = cf_expand(FixedReal::sqrt2(192), 40);
  EXPECT_EQ(r.a0(), 1);
  ASSERT_EQ(r.quotients().size(), 40u);
  for (const BigInt& a : r.quotients()) EXPECT_EQ(a, 2);
  EXPECT_FALSE(r.truncated());
}

TEST(CfExpand, StopsAtPrecisionAndFlags) {
  // 2^(96) caps the denominators: golden-ratio convergents are Fibonacci
  // numbers, so roughly 96 / log2(phi) ~ 138 quotients are meaningful.
  const ContinuedFraction g = cf_expand(FixedReal::golden_ratio(192), 100'000);
  EXPECT_TRUE(g.truncated());
  EXPECT_LE(g.convergents().back().q, pow2(96));
  EXPECT_GT(g.quotients().size(), 130u);
  EXPECT_THROW(cf_expand(FixedReal::parse("-1"), 3), InvalidArgument);
}

TEST(CfExpand, RoundTripProperty) {
  Gen g(31);
  for (int i = 0; i < kPropertyCases; ++i) {
    const std::size_t len = static_cast<std::size_t>(g.range(1, 10));
    std::vector<BigInt> list;
    for (std::size_t k = 0; k < len; ++k) list.push_back(g.range(1, 1000));
    if (list.back() < 2) list.back() = 2;
    const BigInt a0 = g.range(0, 5);
    const AlphaWithCf a = alpha_from_cf(a0, list, 256);
    const ContinuedFraction back = cf_expand(a.alpha, len + 5);
    EXPECT_EQ(back.a0(), a0);
    EXPECT_EQ(back.quotients(), list);
  }
}

TEST(Convergents, DeterminantAndApproximationProperty) {
  Gen g(32);
  for (int i = 0; i < kPropertyCases; ++i) {
    const FixedReal alpha = g.real(192, 0, 3);
    const ContinuedFraction cf = cf_expand(alpha, 30);
    const auto& c = cf.convergents();
    const BigRational x = alpha.to_rational();
    for (std::size_t k = 1; k < c.size(); ++k) {
      const BigInt det = c[k].p * c[k - 1].q - c[k - 1].p * c[k].q;
      EXPECT_EQ(det, (k % 2 == 1) ? 1 : -1);
      EXPECT_EQ(gcd(c[k].p, c[k].q), 1);
      if (k >= 2) EXPECT_GT(c[k].q, c[k - 1].q);
      if (k + 1 < c.size()) {
        EXPECT_LT(abs(x - BigRational(c[k].p, c[k].q)), BigRational(1, c[k].q * c[k + 1].q));
      }
    }
  }
}

TEST(ConvergentDenominators, Examples) {
  const ContinuedFraction g = cf_expand(FixedReal::golden_ratio(192), 50);
  const DenominatorList fib = convergent_denominators(g, 6);
  EXPECT_EQ(fib.q, ints({1, 2, 3, 5, 8, 13}));
  EXPECT_FALSE(fib.truncated);

  const ContinuedFraction big(0, ints({1, 1, 1, 1, 1'000'000}));
  const DenominatorList d = convergent_denominators(big, 5);
  EXPECT_EQ(d.q.back(), BigInt(1'000'000) * 5 + 3);

  const ContinuedFraction half(0, ints({2}));
  const DenominatorList h = convergent_denominators(half, 4);
  EXPECT_EQ(h.q, ints({2}));
  EXPECT_TRUE(h.truncated);
}

TEST(ConvergentDenominators, DistanceBoundProperty) {
  Gen g(33);
  for (int i = 0; i < kPropertyCases; ++i) {
    const FixedReal alpha = g.unit(192);
    const ContinuedFraction cf = cf_expand(alpha, 25);
    const DenominatorList d = convergent_denominators(cf, 25);
    const auto& c = cf.convergents();
    for (std::size_t k = 0; k + 1 < d.q.size(); ++k) {
      const BigRational dist = testing::rational_dist(alpha.to_rational() * BigRational(d.q[k]));
      EXPECT_LT(dist, BigRational(1, c[k + 2].q));
    }
  }
}

TEST(ContinuedFraction, ToString) {
  EXPECT_EQ(ContinuedFraction(1, ints({2, 2})).to_string(), "[1; 2,2]");
}

}  // namespace
}  // namespace pcorr
