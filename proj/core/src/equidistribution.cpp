#include "pcorr/equidistribution.hpp"

#include <algorithm>

#include "pcorr/errors.hpp"
#include "pcorr/rational.hpp"

namespace pcorr {

Interval01::Interval01(FixedReal left, FixedReal right)
    : left_(std::move(left)), right_(std::move(right)) {
  const FixedReal zero(1);
  const FixedReal one = FixedReal::from_integer(1, 1);
  if (left_ < zero || left_ >= one) throw InvalidArgument("interval left end must be in [0, 1)");
  if (right_ < zero || right_ > one) throw InvalidArgument("interval right end must be in [0, 1]");
  if (left_ == right_) throw InvalidArgument("zero-length interval");
  if (right_ == one) {
    right_ = FixedReal(right_.frac_bits());
    wraps_ = true;  // [left, 1); with left == 0 this is the whole circle
  } else {
    wraps_ = right_ < left_;
  }
}

BigRational Interval01::length() const {
  BigRational len = right_.to_rational() - left_.to_rational();
  if (wraps_) len += 1;
  return len;
}

bool Interval01::contains(const FixedReal& u) const {
  if (!wraps_) return left_ <= u && u < right_;
  return u >= left_ || u < right_;
}

std::vector<EquidistributionRow> equidistribution_counts(std::span<const BigInt> terms,
                                                         const FixedReal& alpha,
                                                         std::span<const Interval01> intervals) {
  if (terms.empty()) throw InvalidArgument("equidistribution needs N >= 1");
  std::vector<FixedReal> pts;
  pts.reserve(terms.size());
  for (const BigInt& x : terms) pts.push_back((alpha * x).mod1());

  const double n = static_cast<double>(terms.size());
  std::vector<EquidistributionRow> rows;
  rows.reserve(intervals.size());
  for (const Interval01& iv : intervals) {
    EquidistributionRow row;
    for (const FixedReal& u : pts) row.hits += iv.contains(u) ? 1 : 0;
    const BigRational len = iv.length();
    row.frequency = static_cast<double>(row.hits) / n;
    row.length = to_double(len);
    row.deviation = to_double(BigRational(row.hits) / BigRational(terms.size()) - len);
    rows.push_back(row);
  }
  return rows;
}

Discrepancy star_discrepancy(std::span<const BigInt> terms, const FixedReal& alpha) {
  std::vector<FixedReal> pts;
  pts.reserve(terms.size());
  for (const BigInt& x : terms) pts.push_back((alpha * x).mod1());
  return star_discrepancy(std::move(pts));
}

Discrepancy star_discrepancy(std::vector<FixedReal> points) {
  if (points.empty()) throw InvalidArgument("discrepancy needs N >= 1");
  unsigned bits = 1;
  for (const FixedReal& p : points) bits = std::max(bits, p.frac_bits());
  std::vector<BigInt> raw;
  raw.reserve(points.size());
  for (const FixedReal& p : points) raw.push_back(p.with_frac_bits(bits).raw());
  std::sort(raw.begin(), raw.end());

  // Every candidate is (numerator) / (N 2^bits); track the largest numerator.
  const BigInt n = raw.size();
  const BigInt one = pow2(bits);
  BigInt best = 0;
  for (std::size_t i = 1; i <= raw.size(); ++i) {
    const BigInt& u = raw[i - 1];
    BigInt above = BigInt(i) * one - n * u;        // i/N - u_(i)
    BigInt below = n * u - BigInt(i - 1) * one;    // u_(i) - (i-1)/N
    best = std::max({best, above, below});
  }
  Discrepancy d;
  d.exact = BigRational(best, n * one);
  d.value = to_double(d.exact);
  return d;
}

}  // namespace pcorr
