#include "pcorr/fixed_real.hpp"

#include <algorithm>
#include <cmath>

#include "pcorr/errors.hpp"
#include "pcorr/rational.hpp"

namespace pcorr {

namespace mp = boost::multiprecision;

namespace {

constexpr unsigned kMaxFracBits = 1u << 20;

void check_bits(unsigned frac_bits) {
  if (frac_bits == 0 || frac_bits > kMaxFracBits) {
    throw InvalidArgument("frac_bits must be in [1, 2^20], got " + std::to_string(frac_bits));
  }
}

}  // namespace

FixedReal::FixedReal(unsigned frac_bits) : raw_(0), frac_bits_(frac_bits) {
  check_bits(frac_bits);
}

FixedReal FixedReal::from_raw(BigInt raw, unsigned frac_bits) {
  FixedReal r(frac_bits);
  r.raw_ = std::move(raw);
  return r;
}

FixedReal FixedReal::from_integer(const BigInt& v, unsigned frac_bits) {
  return from_raw(v << frac_bits, frac_bits);
}

FixedReal FixedReal::from_rational(const BigRational& r, unsigned frac_bits, Rounding rounding) {
  check_bits(frac_bits);
  BigInt num = mp::numerator(r) << frac_bits;
  const BigInt& den = mp::denominator(r);
  BigInt q = floor_div(num, den);
  if (rounding == Rounding::kCeil && q * den != num) ++q;
  return from_raw(std::move(q), frac_bits);
}

FixedReal FixedReal::parse(std::string_view text, unsigned frac_bits) {
  return from_rational(parse_rational(text), frac_bits);
}

FixedReal FixedReal::sqrt2(unsigned frac_bits) {
  check_bits(frac_bits);
  const unsigned w = frac_bits + kGuardBits;
  BigInt wide = mp::sqrt(BigInt(2) << (2 * w));
  return from_raw(wide >> kGuardBits, frac_bits);
}

FixedReal FixedReal::golden_ratio(unsigned frac_bits) {
  check_bits(frac_bits);
  const unsigned w = frac_bits + kGuardBits;
  BigInt wide = (pow2(w) + mp::sqrt(BigInt(5) << (2 * w))) >> 1;
  return from_raw(wide >> kGuardBits, frac_bits);
}

FixedReal FixedReal::e(unsigned frac_bits) {
  check_bits(frac_bits);
  const unsigned w = frac_bits + kGuardBits;
  // Each truncated term loses < 1 unit at 2^-w; the number of terms is far
  // below 2^kGuardBits for any supported precision.
  BigInt term = pow2(w);
  BigInt sum = 0;
  for (unsigned k = 1; term != 0; ++k) {
    sum += term;
    term /= k;
  }
  return from_raw(sum >> kGuardBits, frac_bits);
}

BigInt FixedReal::integer_part() const { return mp::abs(raw_) >> frac_bits_; }

BigInt FixedReal::frac() const {
  BigInt mag = mp::abs(raw_);
  return mag - ((mag >> frac_bits_) << frac_bits_);
}

bool FixedReal::is_integer() const { return frac() == 0; }

FixedReal FixedReal::mod1() const {
  // Floor-shift is exact for negatives as well: raw - floor(raw / 2^B) * 2^B.
  BigInt fl = floor_div(raw_, pow2(frac_bits_));
  return from_raw(raw_ - (fl << frac_bits_), frac_bits_);
}

FixedReal FixedReal::with_frac_bits(unsigned frac_bits) const {
  check_bits(frac_bits);
  if (frac_bits >= frac_bits_) return from_raw(raw_ << (frac_bits - frac_bits_), frac_bits);
  return from_raw(floor_div(raw_, pow2(frac_bits_ - frac_bits)), frac_bits);
}

FixedReal& FixedReal::operator+=(const FixedReal& o) {
  if (o.frac_bits_ > frac_bits_) *this = with_frac_bits(o.frac_bits_);
  raw_ += o.frac_bits_ == frac_bits_ ? o.raw_ : o.raw_ << (frac_bits_ - o.frac_bits_);
  return *this;
}

FixedReal& FixedReal::operator-=(const FixedReal& o) { return *this += -o; }

FixedReal& FixedReal::operator*=(const BigInt& k) {
  raw_ *= k;
  return *this;
}

FixedReal& FixedReal::operator*=(std::int64_t k) {
  raw_ *= k;
  return *this;
}

FixedReal FixedReal::mul(const FixedReal& o) const {
  const unsigned bits = std::max(frac_bits_, o.frac_bits_);
  BigInt prod = raw_ * o.raw_;
  // prod carries frac_bits_ + o.frac_bits_ fractional bits.
  return from_raw(floor_div(prod, pow2(frac_bits_ + o.frac_bits_ - bits)), bits);
}

FixedReal FixedReal::div_floor(const BigInt& k) const {
  if (k <= 0) throw InvalidArgument("div_floor requires a positive divisor");
  return from_raw(floor_div(raw_, k), frac_bits_);
}

bool operator==(const FixedReal& a, const FixedReal& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const FixedReal& a, const FixedReal& b) {
  int c = 0;
  if (a.frac_bits_ == b.frac_bits_) {
    c = a.raw_.compare(b.raw_);
  } else if (a.frac_bits_ > b.frac_bits_) {
    c = a.raw_.compare(BigInt(b.raw_ << (a.frac_bits_ - b.frac_bits_)));
  } else {
    c = BigInt(a.raw_ << (b.frac_bits_ - a.frac_bits_)).compare(b.raw_);
  }
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

BigRational FixedReal::to_rational() const { return BigRational(raw_, pow2(frac_bits_)); }

double FixedReal::to_double() const {
  // Keep ~64 significant bits before converting so huge precisions stay cheap.
  BigInt mag = mp::abs(raw_);
  if (mag == 0) return 0.0;
  long shift = static_cast<long>(mp::msb(mag)) - 63;
  double r;
  if (shift > 0) {
    r = std::ldexp(static_cast<double>(static_cast<std::uint64_t>(mag >> shift)),
                   static_cast<int>(shift - static_cast<long>(frac_bits_)));
  } else {
    r = std::ldexp(static_cast<double>(static_cast<std::uint64_t>(mag)),
                   -static_cast<int>(frac_bits_));
  }
  return raw_ < 0 ? -r : r;
}

std::string FixedReal::to_string(unsigned digits) const {
  std::string out = raw_ < 0 ? "-" : "";
  out += integer_part().str();
  if (digits == 0) return out;
  out += '.';
  BigInt f = frac();
  for (unsigned i = 0; i < digits; ++i) {
    f *= 10;
    BigInt d = f >> frac_bits_;
    out += static_cast<char>('0' + static_cast<int>(d));
    f -= d << frac_bits_;
  }
  return out;
}

FixedReal dist_to_nearest_int(const FixedReal& x) {
  FixedReal r = x.mod1();
  FixedReal complement = FixedReal::from_raw(pow2(x.frac_bits()) - r.raw(), x.frac_bits());
  return complement < r ? complement : r;
}

}  // namespace pcorr
