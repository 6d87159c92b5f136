#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "pcorr/bigint.hpp"
#include "pcorr/circle.hpp"
#include "pcorr/fixed_real.hpp"

namespace pcorr {

// Pair correlation of alpha A_N mod 1 at scale s:
//
//   F = (1/N) #{ordered (i, j), x_i != x_j : ||alpha (x_i - x_j)|| <= s/N}.
//
// The window is closed, so ties at exactly s/N count. Pairs are ordered, so
// every unordered pair contributes 0 or 2 and i.i.d. uniform points give
// F -> 2s.
struct PairCorrResult {
  std::size_t N = 0;
  BigRational s;
  FixedReal window;  // s/N rounded down to the precision of alpha
  std::uint64_t ordered_pair_count = 0;
  double F = 0.0;
  std::string alpha_descriptor;
  bool degenerate = false;  // s/N >= 1/2: the window covers the circle
};

// O(N^2) reference: every pair is tested with exact FixedReal arithmetic.
// Requires N >= 2, strictly increasing terms and s >= 0.
PairCorrResult pair_correlation_naive(std::span<const BigInt> terms, const FixedReal& alpha,
                                      const BigRational& s, std::string alpha_descriptor = {});

struct PairCorrOptions {
  unsigned threads = 1;
};

// Sort-and-sweep counter over exact fractional parts; same count as the
// naive version on every input.
PairCorrResult pair_correlation_fast(std::span<const BigInt> terms, const FixedReal& alpha,
                                     const BigRational& s, std::string alpha_descriptor = {},
                                     PairCorrOptions options = {});
PairCorrResult pair_correlation_fast(std::span<const std::uint64_t> terms,
                                     const FixedReal& alpha, const BigRational& s,
                                     std::string alpha_descriptor = {},
                                     PairCorrOptions options = {});

// Same statistic for arbitrary points on the circle (e.g. i.i.d. samples).
PairCorrResult pair_correlation_points(CirclePoints points, const BigRational& s,
                                       std::string descriptor = {}, PairCorrOptions options = {});

}  // namespace pcorr
