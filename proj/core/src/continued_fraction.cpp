#include "pcorr/continued_fraction.hpp"

#include "pcorr/errors.hpp"
#include "pcorr/rational.hpp"

namespace pcorr {

ContinuedFraction::ContinuedFraction(BigInt a0, std::vector<BigInt> quotients)
    : a0_(std::move(a0)), quotients_(std::move(quotients)) {
  if (a0_ < 0) throw InvalidArgument("continued fraction a0 must be non-negative");
  convergents_.clear();
  convergents_.reserve(quotients_.size() + 1);
  BigInt p_prev = 1, q_prev = 0;
  BigInt p = a0_, q = 1;
  convergents_.push_back({p, q});
  for (std::size_t k = 0; k < quotients_.size(); ++k) {
    const BigInt& a = quotients_[k];
    if (a < 1) {
      throw InvalidArgument("partial quotient a_" + std::to_string(k + 1) + " must be >= 1");
    }
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    convergents_.push_back({p, q});
  }
}

std::string ContinuedFraction::to_string() const {
  std::string out = "[" + a0_.str() + ";";
  for (std::size_t i = 0; i < quotients_.size(); ++i) {
    out += (i ? "," : " ") + quotients_[i].str();
  }
  return out + "]";
}

AlphaWithCf alpha_from_cf(const BigInt& a0, std::span<const BigInt> quotients,
                          unsigned frac_bits) {
  if (quotients.empty()) {
    throw InvalidArgument("alpha_from_cf needs at least one partial quotient");
  }
  ContinuedFraction cf(a0, std::vector<BigInt>(quotients.begin(), quotients.end()));
  const Convergent& last = cf.convergents().back();
  // The value moves away from p_n/q_n as the last complete quotient grows past
  // a_n: upward for even n, downward for odd n. Rounding that way keeps the
  // canonical expansion.
  const auto rounding = quotients.size() % 2 == 0 ? FixedReal::Rounding::kCeil
                                                  : FixedReal::Rounding::kFloor;
  FixedReal alpha = FixedReal::from_rational(BigRational(last.p, last.q), frac_bits, rounding);
  return {std::move(alpha), std::move(cf)};
}

ContinuedFraction cf_expand(const FixedReal& alpha, std::size_t max_terms) {
  if (alpha.sign() < 0 && !alpha.is_zero()) {
    throw InvalidArgument("cf_expand requires alpha >= 0");
  }
  if (max_terms == 0) throw InvalidArgument("cf_expand requires max_terms >= 1");

  const BigInt q_cap = pow2(alpha.frac_bits() / 2);
  BigInt num = alpha.raw();
  BigInt den = pow2(alpha.frac_bits());
  BigInt a0 = num / den;
  {
    BigInt rem = num - a0 * den;
    num = std::move(den);
    den = std::move(rem);
  }

  std::vector<BigInt> quotients;
  BigInt q_prev = 0, q = 1;  // q_{-1}, q_0
  bool truncated = false;
  while (den != 0 && quotients.size() < max_terms) {
    BigInt a = num / den;
    BigInt q_next = a * q + q_prev;
    if (q_next > q_cap) {
      truncated = true;
      break;
    }
    BigInt rem = num - a * den;
    num = std::move(den);
    den = std::move(rem);
    q_prev = std::move(q);
    q = std::move(q_next);
    quotients.push_back(std::move(a));
  }
  ContinuedFraction cf(std::move(a0), std::move(quotients));
  cf.set_truncated(truncated);
  return cf;
}

DenominatorList convergent_denominators(const ContinuedFraction& cf, std::size_t k_max) {
  DenominatorList out;
  const auto& conv = cf.convergents();
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k >= conv.size()) {
      out.truncated = true;
      break;
    }
    out.q.push_back(conv[k].q);
  }
  return out;
}

}  // namespace pcorr
