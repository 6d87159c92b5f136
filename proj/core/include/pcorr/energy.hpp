#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcorr/bigint.hpp"
#include "pcorr/sequences.hpp"

namespace pcorr {

// Exact energy is quadratic; larger sets are rejected rather than sampled.
inline constexpr std::size_t kMaxEnergyN = 50'000;

struct EnergyResult {
  std::size_t N = 0;
  BigInt E;                     // #{(b1,b2,b3,b4) in B^4 : b1 + b2 = b3 + b4}
  BigInt tally_total;           // sum over sigma of r_sum(sigma); always N^2
  double normalized = 0.0;      // E / N^3
  double log_normalized = 0.0;  // E ln N / N^3
};

// E(B) = sum_sigma r_sum(sigma)^2 where r_sum(sigma) counts ordered pairs with
// b1 + b2 = sigma. Uses a dense tally when the sums are small and a hash tally
// otherwise. Elements must be distinct and non-negative; N <= kMaxEnergyN.
EnergyResult additive_energy(std::span<const BigInt> set);

// One EnergyResult per N (increasing, each <= kMaxEnergyN), computed on
// prefixes of the same generated sequence.
std::vector<EnergyResult> energy_scaling_profile(const SequenceSpec& spec,
                                                 std::span<const std::size_t> n_values);

}  // namespace pcorr
