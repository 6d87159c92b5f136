#include "pcorr/pair_correlation.hpp"

#include <vector>

#include "pcorr/errors.hpp"
#include "pcorr/rational.hpp"

namespace pcorr {

namespace {

template <class T>
void check_terms(std::span<const T> terms) {
  if (terms.size() < 2) throw InvalidArgument("pair correlation needs N >= 2");
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (!(terms[i - 1] < terms[i])) {
      throw InvalidArgument("terms must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

void check_s(const BigRational& s) {
  if (s < 0) throw InvalidArgument("s must be non-negative");
}

PairCorrResult make_result(std::size_t n, const BigRational& s, unsigned frac_bits,
                           std::uint64_t count, std::string descriptor) {
  PairCorrResult r;
  r.N = n;
  r.s = s;
  const BigRational width = s / BigRational(n);
  r.window = FixedReal::from_rational(width, frac_bits);
  r.ordered_pair_count = count;
  r.F = static_cast<double>(count) / static_cast<double>(n);
  r.alpha_descriptor = std::move(descriptor);
  r.degenerate = width * 2 >= 1;
  return r;
}

}  // namespace

PairCorrResult pair_correlation_naive(std::span<const BigInt> terms, const FixedReal& alpha,
                                      const BigRational& s, std::string alpha_descriptor) {
  check_terms(terms);
  check_s(s);
  const std::size_t n = terms.size();
  std::vector<FixedReal> dilated;
  dilated.reserve(n);
  for (const BigInt& x : terms) dilated.push_back(alpha * x);

  // ||d|| <= s/N  <=>  raw(||d||) * N * den(s) <= num(s) * 2^B.
  const BigInt lhs_scale = BigInt(n) * boost::multiprecision::denominator(s);
  const BigInt rhs = boost::multiprecision::numerator(s) << alpha.frac_bits();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const FixedReal d = dist_to_nearest_int(dilated[i] - dilated[j]);
      if (d.raw() * lhs_scale <= rhs) count += 2;  // (i, j) and (j, i)
    }
  }
  return make_result(n, s, alpha.frac_bits(), count, std::move(alpha_descriptor));
}

PairCorrResult pair_correlation_fast(std::span<const BigInt> terms, const FixedReal& alpha,
                                     const BigRational& s, std::string alpha_descriptor,
                                     PairCorrOptions options) {
  check_terms(terms);
  check_s(s);
  bool small = true;
  for (const BigInt& x : terms) {
    if (!to_u64(x)) {
      small = false;
      break;
    }
  }
  CirclePoints pts(1);
  if (small) {
    std::vector<std::uint64_t> u;
    u.reserve(terms.size());
    for (const BigInt& x : terms) u.push_back(static_cast<std::uint64_t>(x));
    pts = CirclePoints::dilates(u, alpha);
  } else {
    pts = CirclePoints::dilates(terms, alpha);
  }
  const std::size_t n = terms.size();
  const std::uint64_t count =
      count_close_pairs(std::move(pts), s / BigRational(n), options.threads);
  return make_result(n, s, alpha.frac_bits(), count, std::move(alpha_descriptor));
}

PairCorrResult pair_correlation_fast(std::span<const std::uint64_t> terms,
                                     const FixedReal& alpha, const BigRational& s,
                                     std::string alpha_descriptor, PairCorrOptions options) {
  check_terms(terms);
  check_s(s);
  const std::size_t n = terms.size();
  const std::uint64_t count = count_close_pairs(CirclePoints::dilates(terms, alpha),
                                                s / BigRational(n), options.threads);
  return make_result(n, s, alpha.frac_bits(), count, std::move(alpha_descriptor));
}

PairCorrResult pair_correlation_points(CirclePoints points, const BigRational& s,
                                       std::string descriptor, PairCorrOptions options) {
  check_s(s);
  const std::size_t n = points.size();
  if (n < 2) throw InvalidArgument("pair correlation needs N >= 2");
  const unsigned bits = points.bits();
  const std::uint64_t count =
      count_close_pairs(std::move(points), s / BigRational(n), options.threads);
  return make_result(n, s, bits, count, std::move(descriptor));
}

}  // namespace pcorr
