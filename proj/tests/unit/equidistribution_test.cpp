#include "pcorr/equidistribution.hpp"

#include <gtest/gtest.h>

#include "pcorr/errors.hpp"
#include "pcorr/rational.hpp"
#include "support.hpp"

namespace pcorr {
namespace {

using testing::Gen;
using testing::kPropertyCases;

FixedReal fr(const char* t) { return FixedReal::parse(t, 64); }

std::vector<BigInt> range1(std::size_t n) {
  std::vector<BigInt> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(i);
  return out;
}

TEST(Interval01, Construction) {
  const Interval01 full(fr("0"), fr("1"));
  EXPECT_EQ(full.length(), 1);
  EXPECT_TRUE(full.contains(fr("0.999")));
  const Interval01 wrap(fr("0.75"), fr("0.25"));
  EXPECT_TRUE(wrap.wraps());
  EXPECT_EQ(wrap.length(), BigRational(1, 2));
  EXPECT_TRUE(wrap.contains(fr("0.1")));
  EXPECT_TRUE(wrap.contains(fr("0.75")));
  EXPECT_FALSE(wrap.contains(fr("0.25")));
  EXPECT_THROW(Interval01(fr("0.5"), fr("0.5")), InvalidArgument);
  EXPECT_THROW(Interval01(fr("1"), fr("0.5")), InvalidArgument);
  EXPECT_THROW(Interval01(fr("0.2"), fr("1.5")), InvalidArgument);
}

TEST(EquidistributionCounts, Examples) {
  const std::vector<Interval01> half{Interval01(fr("0"), fr("0.5"))};
  const auto r0 = equidistribution_counts(range1(7), FixedReal(64), half);
  EXPECT_DOUBLE_EQ(r0[0].frequency, 1.0);
  EXPECT_DOUBLE_EQ(r0[0].deviation, 0.5);

  const std::vector<Interval01> quarter{Interval01(fr("0"), fr("0.25"))};
  const auto r1 = equidistribution_counts(range1(4), fr("0.25"), quarter);
  EXPECT_EQ(r1[0].hits, 1u);
  EXPECT_DOUBLE_EQ(r1[0].frequency, 0.25);
  EXPECT_DOUBLE_EQ(r1[0].deviation, 0.0);

  const std::vector<Interval01> all{Interval01(fr("0"), fr("1"))};
  const auto r2 = equidistribution_counts(range1(9), FixedReal::sqrt2(64), all);
  EXPECT_DOUBLE_EQ(r2[0].frequency, 1.0);
  EXPECT_DOUBLE_EQ(r2[0].deviation, 0.0);
}

TEST(EquidistributionCounts, MatchesOracleProperty) {
  Gen g(71);
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto terms = g.increasing(static_cast<std::size_t>(g.range(1, 60)), 20);
    const FixedReal alpha = g.real(static_cast<unsigned>(g.range(1, 10)), 0, 2);
    FixedReal l = FixedReal::from_raw(g.range(0, 15), 4);
    FixedReal r = FixedReal::from_raw(g.range(0, 16), 4);
    if (l == r) r = FixedReal::from_raw((r.raw() + 1) % 16, 4);
    const Interval01 iv(l, r);
    const auto rows = equidistribution_counts(terms, alpha, std::span<const Interval01>(&iv, 1));
    std::size_t hits = 0;
    for (const BigInt& x : terms) {
      const BigRational v = alpha.to_rational() * BigRational(x);
      const BigRational u = v - BigRational(pcorr::floor(v));
      const BigRational lo = l.to_rational(), hi = r.to_rational();
      const bool in = lo < hi ? (u >= lo && u < hi) : (u >= lo || u < hi);
      hits += in ? 1 : 0;
    }
    ASSERT_EQ(rows[0].hits, hits);
  }
}

// sup_t |#{u < t}/N - t| by testing t at every point and just above it.
BigRational brute_discrepancy(std::vector<BigRational> u) {
  const BigRational n(u.size());
  BigRational best = 0;
  u.push_back(1);
  for (const BigRational& t : u) {
    std::size_t below = 0, at_or_below = 0;
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
      below += u[k] < t ? 1 : 0;
      at_or_below += u[k] <= t ? 1 : 0;
    }
    best = std::max(best, BigRational(abs(BigRational(below) / n - t)));
    if (t < 1) best = std::max(best, BigRational(abs(BigRational(at_or_below) / n - t)));
  }
  return best;
}

TEST(StarDiscrepancy, Examples) {
  const std::vector<BigInt> one{5};
  EXPECT_EQ(star_discrepancy(one, FixedReal(64)).exact, 1);
  EXPECT_EQ(star_discrepancy(one, fr("0.125")).exact, BigRational(5, 8));
  const std::vector<BigInt> two{1, 3};
  EXPECT_EQ(star_discrepancy(two, fr("0.25")).exact, BigRational(1, 4));
  std::vector<FixedReal> grid;
  for (int k = 0; k < 8; ++k) grid.push_back(FixedReal::from_raw(k, 3));
  EXPECT_EQ(star_discrepancy(grid).exact, BigRational(1, 8));
}

TEST(StarDiscrepancy, MatchesBruteForceProperty) {
  Gen g(72);
  for (int i = 0; i < kPropertyCases; ++i) {
    const std::size_t n = static_cast<std::size_t>(g.range(1, 30));
    std::vector<FixedReal> pts;
    std::vector<BigRational> vals;
    const unsigned bits = static_cast<unsigned>(g.range(1, 12));
    for (std::size_t k = 0; k < n; ++k) {
      pts.push_back(g.unit(bits));
      vals.push_back(pts.back().to_rational());
    }
    ASSERT_EQ(star_discrepancy(pts).exact, brute_discrepancy(vals));
  }
}

}  // namespace
}  // namespace pcorr
