#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pcorr {

inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 20;
// Largest bound accepted by primes_up_to.
inline constexpr std::uint64_t kMaxSieveBound = std::uint64_t{1} << 34;

// All primes <= limit together with an odd-only bitmap for O(1) membership.
// Immutable after construction; safe to share read-only across threads.
class PrimeTable {
 public:
  PrimeTable() = default;

  std::uint64_t limit() const noexcept { return limit_; }
  const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }
  std::size_t count() const noexcept { return primes_.size(); }

  // Exact for 0 <= x <= limit(); false above the limit.
  bool contains(std::uint64_t x) const noexcept {
    if (x > limit_) return false;
    if (x == 2) return true;
    if (x < 2 || (x & 1) == 0) return false;
    const std::uint64_t i = x >> 1;
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }

  // Number of primes <= x (x <= limit()).
  std::size_t pi(std::uint64_t x) const;

 private:
  friend PrimeTable primes_up_to(std::uint64_t, std::size_t);

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint64_t> bits_;  // bit i set <=> 2i+1 prime
};

// Segmented sieve of Eratosthenes over odd numbers. Sieving memory is
// O(sqrt(limit) + segment_size); the result is independent of segment_size.
// limit < 2 yields an empty table. Throws BudgetExceeded above kMaxSieveBound.
PrimeTable primes_up_to(std::uint64_t limit, std::size_t segment_size = kDefaultSegmentSize);

// Deterministic Miller-Rabin for the whole 64-bit range.
bool is_prime_u64(std::uint64_t n);

// Prime factorisation as (prime, exponent) pairs in increasing order.
// Trial division by small primes, then Pollard-Brent on the cofactor.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

// Upper bound for the n-th prime (n >= 1), valid for all n.
std::uint64_t nth_prime_upper_bound(std::uint64_t n);

}  // namespace pcorr
