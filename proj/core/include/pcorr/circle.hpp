#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pcorr/bigint.hpp"
#include "pcorr/fixed_real.hpp"

namespace pcorr {

// Points of R/Z stored as fixed-width binary fractions u / 2^(64 * limbs),
// limb 0 most significant. Differences are taken modulo 2^(64 * limbs), which
// is exactly subtraction on the circle.
class CirclePoints {
 public:
  explicit CirclePoints(std::size_t limbs);

  // Fractional parts {alpha x} for every term. Exact: the limb count is
  // ceil(alpha.frac_bits() / 64) and alpha's fraction is left aligned.
  static CirclePoints dilates(std::span<const std::uint64_t> terms, const FixedReal& alpha);
  static CirclePoints dilates(std::span<const BigInt> terms, const FixedReal& alpha);

  static std::size_t limbs_for(unsigned frac_bits) { return (frac_bits + 63) / 64; }

  std::size_t size() const noexcept { return limbs_ == 0 ? 0 : data_.size() / limbs_; }
  std::size_t limbs() const noexcept { return limbs_; }
  unsigned bits() const noexcept { return static_cast<unsigned>(64 * limbs_); }

  void reserve(std::size_t n) { data_.reserve(n * limbs_); }
  void push_back(std::span<const std::uint64_t> limbs);
  std::span<const std::uint64_t> point(std::size_t i) const {
    return {data_.data() + i * limbs_, limbs_};
  }
  FixedReal as_fixed(std::size_t i) const;

  // Sorts points in increasing order of their fraction.
  void sort();
  bool is_sorted() const;

 private:
  std::size_t limbs_;
  std::vector<std::uint64_t> data_;
};

// Number of ordered pairs (i, j), i != j, with ||u_i - u_j|| <= width
// (closed window). width >= 1/2 counts every pair. Sorts the points, then
// runs a circular two-pointer sweep: O(N log N) for the sort plus O(N) for
// the sweep. With threads > 1 the sweep is split into contiguous blocks whose
// partial counts are summed, so the result does not depend on threads.
std::uint64_t count_close_pairs(CirclePoints points, const BigRational& width,
                                unsigned threads = 1);

}  // namespace pcorr
