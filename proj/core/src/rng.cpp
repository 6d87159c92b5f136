#include "pcorr/rng.hpp"

#include <vector>

namespace pcorr {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  SplitMix64 sm(seed);
  for (auto& w : s_) w = sm.next();
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

FixedReal random_unit(Xoshiro256& rng, unsigned frac_bits) {
  const unsigned words = (frac_bits + 63) / 64;
  BigInt v = 0;
  for (unsigned i = 0; i < words; ++i) {
    v <<= 64;
    v += rng.next();
  }
  return FixedReal::from_raw(v >> (64 * words - frac_bits), frac_bits);
}

CirclePoints random_points(Xoshiro256& rng, std::size_t n, std::size_t limbs) {
  CirclePoints pts(limbs);
  pts.reserve(n);
  std::vector<std::uint64_t> buf(limbs);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& w : buf) w = rng.next();
    pts.push_back(buf);
  }
  return pts;
}

}  // namespace pcorr
