#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "pcorr/bigint.hpp"

namespace pcorr {

// Exact binary fixed-point real: value = raw / 2^frac_bits.
//
// Addition, subtraction, negation and multiplication by integers are exact.
// Operands of different precision are widened to the larger one first, which
// is also exact. Only multiplication of two FixedReals, division and the
// constructors from rationals or irrational constants round.
class FixedReal {
 public:
  static constexpr unsigned kDefaultFracBits = 192;
  // Extra bits carried while evaluating irrational constants.
  static constexpr unsigned kGuardBits = 16;

  FixedReal() : FixedReal(kDefaultFracBits) {}
  explicit FixedReal(unsigned frac_bits);

  static FixedReal from_raw(BigInt raw, unsigned frac_bits);
  static FixedReal from_integer(const BigInt& v, unsigned frac_bits = kDefaultFracBits);

  enum class Rounding { kFloor, kCeil };
  // |result - r| < 2^-frac_bits; exact when r is dyadic with enough bits.
  static FixedReal from_rational(const BigRational& r, unsigned frac_bits = kDefaultFracBits,
                                 Rounding rounding = Rounding::kFloor);
  // Accepts anything parse_rational does.
  static FixedReal parse(std::string_view text, unsigned frac_bits = kDefaultFracBits);

  // Irrational constants. Each is evaluated with kGuardBits extra bits and
  // truncated, so 0 <= true value - result < 2^(1 - frac_bits).
  static FixedReal sqrt2(unsigned frac_bits = kDefaultFracBits);
  // (1 + sqrt 5) / 2. Same bound as sqrt2.
  static FixedReal golden_ratio(unsigned frac_bits = kDefaultFracBits);
  // Sum of 1/k! truncated term by term; 0 <= e - result < 2^(1 - frac_bits).
  static FixedReal e(unsigned frac_bits = kDefaultFracBits);

  unsigned frac_bits() const noexcept { return frac_bits_; }
  const BigInt& raw() const noexcept { return raw_; }

  // Sign/magnitude view: value = sign * (integer_part + frac / 2^frac_bits).
  int sign() const { return raw_ < 0 ? -1 : 1; }
  BigInt integer_part() const;
  BigInt frac() const;

  bool is_zero() const { return raw_ == 0; }
  bool is_integer() const;

  // Value mod 1 in [0, 1).
  FixedReal mod1() const;
  // Same value at a different precision: widening is exact, narrowing floors.
  FixedReal with_frac_bits(unsigned frac_bits) const;

  FixedReal operator-() const { return from_raw(-raw_, frac_bits_); }
  FixedReal& operator+=(const FixedReal& o);
  FixedReal& operator-=(const FixedReal& o);
  FixedReal& operator*=(const BigInt& k);
  FixedReal& operator*=(std::int64_t k);

  friend FixedReal operator+(FixedReal a, const FixedReal& b) { return a += b; }
  friend FixedReal operator-(FixedReal a, const FixedReal& b) { return a -= b; }
  friend FixedReal operator*(FixedReal a, const BigInt& k) { return a *= k; }
  friend FixedReal operator*(const BigInt& k, FixedReal a) { return a *= k; }
  friend FixedReal operator*(FixedReal a, std::int64_t k) { return a *= k; }
  friend FixedReal operator*(std::int64_t k, FixedReal a) { return a *= k; }

  // Product truncated toward -infinity at the larger of the two precisions.
  FixedReal mul(const FixedReal& o) const;
  // Floor of value / k, k > 0.
  FixedReal div_floor(const BigInt& k) const;

  friend bool operator==(const FixedReal& a, const FixedReal& b);
  friend std::strong_ordering operator<=>(const FixedReal& a, const FixedReal& b);

  BigRational to_rational() const;
  double to_double() const;
  // Decimal text truncated to `digits` places after the point.
  std::string to_string(unsigned digits = 30) const;

 private:
  BigInt raw_;
  unsigned frac_bits_;
};

// min over integers y of |x - y|, in [0, 1/2]. Exact.
FixedReal dist_to_nearest_int(const FixedReal& x);

}  // namespace pcorr
