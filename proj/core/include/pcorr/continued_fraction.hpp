#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcorr/bigint.hpp"
#include "pcorr/fixed_real.hpp"

namespace pcorr {

struct Convergent {
  BigInt p;
  BigInt q;
};

// Simple continued fraction [a0; a1, a2, ...] with its convergents.
//
// convergents()[k] = p_k / q_k for k = 0..quotients().size(), built from
// p_k = a_k p_{k-1} + p_{k-2}, q_k = a_k q_{k-1} + q_{k-2} with seeds
// (p_{-1}, q_{-1}) = (1, 0) and (p_0, q_0) = (a0, 1).
class ContinuedFraction {
 public:
  ContinuedFraction() = default;
  // Throws InvalidArgument if a0 < 0 or some quotient is < 1.
  ContinuedFraction(BigInt a0, std::vector<BigInt> quotients);

  const BigInt& a0() const noexcept { return a0_; }
  // a_1, a_2, ...
  const std::vector<BigInt>& quotients() const noexcept { return quotients_; }
  const std::vector<Convergent>& convergents() const noexcept { return convergents_; }

  // Set by cf_expand when the precision of the input ran out before
  // max_terms quotients were produced.
  bool truncated() const noexcept { return truncated_; }
  void set_truncated(bool t) noexcept { truncated_ = t; }

  // Quotient list as text, "[a0; a1,a2,...]".
  std::string to_string() const;

 private:
  BigInt a0_ = 0;
  std::vector<BigInt> quotients_;
  std::vector<Convergent> convergents_{Convergent{0, 1}};
  bool truncated_ = false;
};

struct AlphaWithCf {
  FixedReal alpha;
  ContinuedFraction cf;
};

// Value of the finite continued fraction (its last convergent p/q) at
// frac_bits precision, together with all convergents. The rounding direction
// is chosen so that cf_expand recovers the same quotient list: the result is
// within 2^-frac_bits of p/q and never crosses to the [..., a_n - 1, 1] form.
// Throws InvalidArgument for an empty quotient list or a quotient < 1.
AlphaWithCf alpha_from_cf(const BigInt& a0, std::span<const BigInt> quotients,
                          unsigned frac_bits = FixedReal::kDefaultFracBits);

// Partial quotients of alpha >= 0 by the Euclidean algorithm on its exact
// binary value. Stops after max_terms quotients, when the expansion ends
// (alpha rational with short expansion), or before emitting a quotient whose
// convergent denominator would exceed 2^(frac_bits / 2); the last case sets
// truncated() since further quotients would only describe rounding noise.
ContinuedFraction cf_expand(const FixedReal& alpha, std::size_t max_terms);

struct DenominatorList {
  std::vector<BigInt> q;  // q_1 .. q_k
  bool truncated = false;  // fewer than k_max were available
};

// q_1 .. q_{k_max}. Each satisfies ||q_k alpha|| < 1 / q_{k+1}.
DenominatorList convergent_denominators(const ContinuedFraction& cf, std::size_t k_max);

}  // namespace pcorr
