#include "pcorr/rational.hpp"

#include <gtest/gtest.h>

#include "pcorr/errors.hpp"
#include "support.hpp"

namespace pcorr {
namespace {

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("3"), BigRational(3));
  EXPECT_EQ(parse_rational("-0.25"), BigRational(-1, 4));
  EXPECT_EQ(parse_rational("1e-3"), BigRational(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), BigRational(250));
  EXPECT_EQ(parse_rational(" 6/4 "), BigRational(3, 2));
  EXPECT_EQ(parse_rational(".5"), BigRational(1, 2));
  EXPECT_EQ(parse_rational("0.01"), BigRational(1, 100));
}

TEST(ParseRational, Rejects) {
  for (const char* bad : {"", "abc", "1/0", "1..2", "e5", "1e", "--1", "1/"}) {
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
  }
}

TEST(RationalFromDouble, ExactBinaryValues) {
  EXPECT_EQ(rational_from_double(0.5), BigRational(1, 2));
  EXPECT_EQ(rational_from_double(-3.0), BigRational(-3));
  EXPECT_EQ(rational_from_double(0.1), BigRational(BigInt(3602879701896397), pow2(55)));
}

TEST(RationalFromDouble, RoundTripProperty) {
  testing::Gen g(11);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const double x = std::ldexp(static_cast<double>(g.u64() >> 11), static_cast<int>(g.range(-80, 20)));
    const double y = g.coin() ? -x : x;
    EXPECT_EQ(to_double(rational_from_double(y)), y);
  }
}

TEST(FloorCeil, MatchDefinition) {
  testing::Gen g(12);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const BigRational r(g.range(-10'000, 10'000), g.range(1, 97));
    const BigInt f = floor(r), c = ceil(r);
    EXPECT_LE(BigRational(f), r);
    EXPECT_GT(BigRational(f + 1), r);
    EXPECT_GE(BigRational(c), r);
    EXPECT_LT(BigRational(c - 1), r);
  }
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, 2), 3);
}

TEST(Format, SignificantDigits) {
  EXPECT_EQ(format_sig(2.0), "2");
  EXPECT_EQ(format_sig(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(to_string(BigRational(3, 6)), "1/2");
  EXPECT_EQ(to_string(BigRational(4)), "4");
}

}  // namespace
}  // namespace pcorr
