#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pcorr/bigint.hpp"
#include "pcorr/fixed_real.hpp"

namespace pcorr::testing {

inline constexpr int kPropertyCases = 1000;

// Hand-rolled generators on top of a fixed-seed mt19937_64, independent of
// the library's own generator.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
  }
  bool coin() { return eng_() & 1; }

  BigInt big(unsigned bits) {
    BigInt v = 0;
    for (unsigned done = 0; done < bits; done += 64) {
      v <<= 64;
      v += eng_();
    }
    return v >> ((bits + 63) / 64 * 64 - bits);
  }

  FixedReal unit(unsigned frac_bits) { return FixedReal::from_raw(big(frac_bits), frac_bits); }

  FixedReal real(unsigned frac_bits, std::int64_t int_lo, std::int64_t int_hi) {
    return unit(frac_bits) + FixedReal::from_integer(range(int_lo, int_hi), frac_bits);
  }

  BigRational small_rational(std::int64_t num_hi, std::int64_t den_hi) {
    return BigRational(range(0, num_hi), range(1, den_hi));
  }

  // Strictly increasing positive integers.
  std::vector<BigInt> increasing(std::size_t n, std::int64_t max_gap) {
    std::vector<BigInt> out;
    BigInt x = range(1, max_gap);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(x);
      x += range(1, max_gap);
    }
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

// ||r|| for an exact rational.
inline BigRational rational_dist(const BigRational& r) {
  const BigInt n = boost::multiprecision::numerator(r);
  const BigInt d = boost::multiprecision::denominator(r);
  BigInt rem = n % d;
  if (rem < 0) rem += d;
  const BigRational f(rem, d);
  return f <= BigRational(1, 2) ? f : 1 - f;
}

// Ordered pairs with ||alpha (x_i - x_j)|| <= s/N, entirely in rationals.
inline std::uint64_t oracle_pair_count(const std::vector<BigInt>& terms, const BigRational& alpha,
                                       const BigRational& s) {
  const BigRational w = s / BigRational(terms.size());
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (i == j) continue;
      if (rational_dist(alpha * BigRational(terms[i] - terms[j])) <= w) ++count;
    }
  }
  return count;
}

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> trial_division_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (trial_division_prime(n)) out.push_back(n);
  }
  return out;
}

}  // namespace pcorr::testing
