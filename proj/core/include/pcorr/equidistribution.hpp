#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcorr/bigint.hpp"
#include "pcorr/fixed_real.hpp"

namespace pcorr {

// Half-open arc [left, right) of R/Z. When wraps is set the arc crosses 0:
// [left, 1) u [0, right). left == right with wraps is the whole circle.
class Interval01 {
 public:
  // left in [0, 1), right in [0, 1]; right = 1 is read as 0 with wraparound.
  // right < left gives a wrapping arc. Throws InvalidArgument for zero length
  // or endpoints out of range.
  Interval01(FixedReal left, FixedReal right);

  const FixedReal& left() const noexcept { return left_; }
  const FixedReal& right() const noexcept { return right_; }
  bool wraps() const noexcept { return wraps_; }

  // In (0, 1].
  BigRational length() const;
  bool contains(const FixedReal& u) const;  // u in [0, 1)

 private:
  FixedReal left_;
  FixedReal right_;
  bool wraps_ = false;
};

struct EquidistributionRow {
  std::size_t hits = 0;
  double frequency = 0.0;  // hits / N
  double length = 0.0;     // |I|
  double deviation = 0.0;  // frequency - |I|
};

// (1/N) #{x in A : {alpha x} in I} for each interval. N >= 1.
std::vector<EquidistributionRow> equidistribution_counts(std::span<const BigInt> terms,
                                                         const FixedReal& alpha,
                                                         std::span<const Interval01> intervals);

struct Discrepancy {
  BigRational exact;
  double value = 0.0;
};

// sup over t in (0, 1] of |#{i : u_i < t}/N - t| for u_i = {alpha x_i},
// evaluated exactly as max_i max(i/N - u_(i), u_(i) - (i-1)/N) over the sorted
// fractional parts u_(1) <= ... <= u_(N).
Discrepancy star_discrepancy(std::span<const BigInt> terms, const FixedReal& alpha);

// Same formula for given points in [0, 1).
Discrepancy star_discrepancy(std::vector<FixedReal> points);

}  // namespace pcorr
