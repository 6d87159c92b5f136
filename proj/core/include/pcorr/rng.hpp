#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "pcorr/circle.hpp"
#include "pcorr/fixed_real.hpp"

namespace pcorr {

// Identifier stamped into every report that consumed random numbers.
inline constexpr std::string_view kRngName = "xoshiro256**/splitmix64 v1";

// SplitMix64:
//   state += 0x9e3779b97f4a7c15
//   z = state
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0. The four state words are the first four SplitMix64
// outputs for the seed. Each step returns rotl(s1 * 5, 7) * 9 and then
//   t = s1 << 17; s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t;
//   s3 = rotl(s3, 45).
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;
  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return UINT64_MAX; }
  result_type operator()() { return next(); }
  std::uint64_t next();

 private:
  std::uint64_t s_[4];
};

// Seed of trial t in a multi-trial experiment: seed + t (mod 2^64).
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t) { return seed + t; }

// Uniform on [0, 1) with frac_bits random bits. Words are consumed most
// significant first; surplus low bits of the last word are dropped.
FixedReal random_unit(Xoshiro256& rng, unsigned frac_bits);

// N i.i.d. uniform points, each filling `limbs` words in order.
CirclePoints random_points(Xoshiro256& rng, std::size_t n, std::size_t limbs);

}  // namespace pcorr
