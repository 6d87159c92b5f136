#include "pcorr/pair_correlation.hpp"

#include <gtest/gtest.h>

#include "pcorr/circle.hpp"
#include "pcorr/errors.hpp"
#include "pcorr/rng.hpp"
#include "pcorr/sequences.hpp"
#include "pcorr/rational.hpp"
#include "support.hpp"

namespace pcorr {
namespace {

using testing::Gen;
using testing::kPropertyCases;

std::vector<BigInt> range1(std::size_t n) {
  std::vector<BigInt> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(i);
  return out;
}

TEST(PairCorrelation, WindowCoversCircle) {
  const auto a = range1(2);
  const auto r = pair_correlation_naive(a, FixedReal::parse("1/2"), 1);
  EXPECT_EQ(r.ordered_pair_count, 2u);
  EXPECT_DOUBLE_EQ(r.F, 1.0);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(pair_correlation_fast(a, FixedReal::parse("1/2"), 1).ordered_pair_count, 2u);
}

TEST(PairCorrelation, AlphaZero) {
  const auto a = range1(5);
  const auto r = pair_correlation_naive(a, FixedReal(192), BigRational(1, 10));
  EXPECT_EQ(r.ordered_pair_count, 20u);
  EXPECT_DOUBLE_EQ(r.F, 4.0);
  EXPECT_EQ(pair_correlation_fast(a, FixedReal(192), BigRational(1, 10)).ordered_pair_count, 20u);
}

TEST(PairCorrelation, PointThree) {
  const auto a = range1(4);
  const FixedReal alpha = FixedReal::parse("0.3", 192);
  const BigRational s(1, 2);
  EXPECT_EQ(testing::oracle_pair_count(a, BigRational(3, 10), s), 2u);
  const auto naive = pair_correlation_naive(a, alpha, s);
  const auto fast = pair_correlation_fast(a, alpha, s);
  EXPECT_EQ(naive.ordered_pair_count, 2u);
  EXPECT_EQ(fast.ordered_pair_count, 2u);
  EXPECT_DOUBLE_EQ(fast.F, 0.5);
  EXPECT_EQ(fast.window.to_rational(), FixedReal::parse("0.125", 192).to_rational());
}

TEST(PairCorrelation, HalfOnFirstThousandNaturals) {
  const auto a = range1(1000);
  // Ordered pairs with even difference: 2 * sum_{d even, 0 < d < 1000} (1000 - d).
  std::uint64_t closed = 0;
  for (std::uint64_t d = 2; d < 1000; d += 2) closed += 2 * (1000 - d);
  EXPECT_EQ(closed, 499'000u);
  const FixedReal half = FixedReal::parse("1/2");
  EXPECT_EQ(pair_correlation_naive(a, half, 1).ordered_pair_count, closed);
  const auto fast = pair_correlation_fast(a, half, 1);
  EXPECT_EQ(fast.ordered_pair_count, closed);
  EXPECT_DOUBLE_EQ(fast.F, 499.0);
}

TEST(PairCorrelation, Errors) {
  const auto one = range1(1);
  EXPECT_THROW(pair_correlation_naive(one, FixedReal(), 1), InvalidArgument);
  EXPECT_THROW(pair_correlation_fast(one, FixedReal(), 1), InvalidArgument);
  const std::vector<BigInt> unsorted{3, 2};
  EXPECT_THROW(pair_correlation_fast(unsorted, FixedReal(), 1), InvalidArgument);
  EXPECT_THROW(pair_correlation_fast(range1(3), FixedReal(), -1), InvalidArgument);
}

// Rational oracle vs both counters, including dyadic alphas whose distances
// land exactly on the window edge.
TEST(PairCorrelation, OracleEquivalenceProperty) {
  Gen g(61);
  for (int i = 0; i < kPropertyCases; ++i) {
    const std::size_t n = static_cast<std::size_t>(g.range(2, 25));
    const auto terms = g.increasing(n, g.coin() ? 3 : 1000);
    const unsigned bits = g.coin() ? static_cast<unsigned>(g.range(1, 8)) : 130;
    const FixedReal alpha = g.real(bits, 0, 3);
    const BigRational s = g.coin() ? BigRational(g.range(0, 3 * static_cast<std::int64_t>(n)), g.range(1, 8))
                                   : BigRational(g.range(0, 40), 10);
    const std::uint64_t oracle = testing::oracle_pair_count(terms, alpha.to_rational(), s);
    ASSERT_EQ(pair_correlation_naive(terms, alpha, s).ordered_pair_count, oracle);
    ASSERT_EQ(pair_correlation_fast(terms, alpha, s).ordered_pair_count, oracle);
  }
}

TEST(PairCorrelation, FastEqualsNaiveOnLargerInputsProperty) {
  Gen g(62);
  const auto primes = generate(SequenceSpec::primes(), 400);
  const auto squares = generate(SequenceSpec::kth_powers(2), 400);
  const auto naturals = generate(SequenceSpec::naturals(), 400);
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto& base = i % 3 == 0 ? primes : i % 3 == 1 ? squares : naturals;
    const std::size_t n = static_cast<std::size_t>(g.range(2, 120));
    const std::span<const BigInt> terms(base.data(), n);
    const FixedReal alpha = g.unit(static_cast<unsigned>(g.range(1, 3)) * 64);
    const BigRational s(g.range(1, 40), 10);
    const auto fast = pair_correlation_fast(terms, alpha, s, {}, PairCorrOptions{i % 2 ? 3u : 1u});
    ASSERT_EQ(fast.ordered_pair_count, pair_correlation_naive(terms, alpha, s).ordered_pair_count);
    std::vector<std::uint64_t> small(n);
    for (std::size_t k = 0; k < n; ++k) small[k] = static_cast<std::uint64_t>(terms[k]);
    ASSERT_EQ(pair_correlation_fast(std::span<const std::uint64_t>(small), alpha, s).ordered_pair_count,
              fast.ordered_pair_count);
  }
}

TEST(PairCorrelation, MonotoneInSProperty) {
  Gen g(63);
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto terms = g.increasing(static_cast<std::size_t>(g.range(2, 200)), 50);
    const FixedReal alpha = g.unit(128);
    const BigRational s1(g.range(0, 30), 10);
    const BigRational s2 = s1 + BigRational(g.range(0, 30), 10);
    const auto a = pair_correlation_fast(terms, alpha, s1).ordered_pair_count;
    const auto b = pair_correlation_fast(terms, alpha, s2).ordered_pair_count;
    ASSERT_LE(a, b);
    ASSERT_EQ(a % 2, 0u);
    ASSERT_LE(b, terms.size() * (terms.size() - 1));
  }
}

TEST(PairCorrelation, ReflectionAndShiftInvarianceProperty) {
  Gen g(64);
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto terms = g.increasing(static_cast<std::size_t>(g.range(2, 200)), 100);
    const unsigned bits = static_cast<unsigned>(g.range(1, 200));
    const FixedReal alpha = g.unit(bits);
    const FixedReal one = FixedReal::from_integer(1, bits);
    const BigRational s(g.range(0, 30), 10);
    const auto base = pair_correlation_fast(terms, alpha, s).ordered_pair_count;
    ASSERT_EQ(pair_correlation_fast(terms, one - alpha, s).ordered_pair_count, base);
    ASSERT_EQ(pair_correlation_fast(terms, alpha + one, s).ordered_pair_count, base);
  }
}

TEST(PairCorrelation, ThreadCountDoesNotChangeResult) {
  const auto primes = generate_u64(SequenceSpec::primes(), 20'000).value();
  const FixedReal alpha = FixedReal::sqrt2(192);
  const auto one = pair_correlation_fast(std::span<const std::uint64_t>(primes), alpha, 1);
  for (unsigned t : {2u, 3u, 8u}) {
    EXPECT_EQ(pair_correlation_fast(std::span<const std::uint64_t>(primes), alpha, 1, {},
                                    PairCorrOptions{t})
                  .ordered_pair_count,
              one.ordered_pair_count);
  }
}

TEST(CirclePoints, DilatesAreExactFractionalParts) {
  Gen g(65);
  for (int i = 0; i < kPropertyCases; ++i) {
    const unsigned bits = static_cast<unsigned>(g.range(1, 260));
    const FixedReal alpha = g.real(bits, 0, 5);
    std::vector<BigInt> terms{g.big(static_cast<unsigned>(g.range(1, 200))) + 1};
    const CirclePoints pts = CirclePoints::dilates(terms, alpha);
    const BigRational expect = (alpha.to_rational() * BigRational(terms[0])) -
                               BigRational(pcorr::floor(alpha.to_rational() * BigRational(terms[0])));
    ASSERT_EQ(pts.as_fixed(0).to_rational(), expect);
    if (terms[0] <= BigInt(UINT64_MAX)) {
      const std::uint64_t x = static_cast<std::uint64_t>(terms[0]);
      ASSERT_EQ(CirclePoints::dilates(std::span<const std::uint64_t>(&x, 1), alpha).as_fixed(0).to_rational(),
                expect);
    }
  }
}

TEST(CirclePoints, CountClosePairsMatchesBruteForceProperty) {
  Gen g(66);
  for (int i = 0; i < kPropertyCases; ++i) {
    const std::size_t limbs = static_cast<std::size_t>(g.range(1, 3));
    const std::size_t n = static_cast<std::size_t>(g.range(0, 40));
    CirclePoints pts(limbs);
    std::vector<BigRational> vals;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::uint64_t> w(limbs);
      // Few distinct top words so duplicates and wraparound are common.
      w[0] = g.coin() ? (g.u64() % 4) << 62 : g.u64();
      for (std::size_t l = 1; l < limbs; ++l) w[l] = g.coin() ? 0 : g.u64();
      pts.push_back(w);
      vals.push_back(pts.as_fixed(k).to_rational());
    }
    const BigRational width(g.range(0, 9), 16);
    std::uint64_t brute = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b && testing::rational_dist(vals[a] - vals[b]) <= width) ++brute;
      }
    }
    ASSERT_EQ(count_close_pairs(pts, width, static_cast<unsigned>(g.range(1, 4))), brute);
  }
}

TEST(PairCorrelationPoints, ZeroWindowDistinctPoints) {
  Xoshiro256 rng(5);
  const auto r = pair_correlation_points(random_points(rng, 1000, 2), 0);
  EXPECT_EQ(r.ordered_pair_count, 0u);
}

TEST(PairCorrelationPoints, TwoPointsWithUnitS) {
  Gen g(67);
  for (int i = 0; i < 100; ++i) {
    Xoshiro256 rng(g.u64());
    EXPECT_DOUBLE_EQ(pair_correlation_points(random_points(rng, 2, 1), 1).F, 1.0);
  }
}

}  // namespace
}  // namespace pcorr
