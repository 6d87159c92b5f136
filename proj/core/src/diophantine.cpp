#include "pcorr/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pcorr/circle.hpp"
#include "pcorr/goldbach.hpp"
#include "pcorr/numeric.hpp"
#include "pcorr/rational.hpp"

namespace pcorr {

namespace mp = boost::multiprecision;

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458176568;

// Upper bound for ln n, n >= 1.
double log_upper_big(const BigInt& n) {
  if (n < pow2(53)) return log_upper(n.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(mp::msb(n)) - 52;
  const double top = static_cast<BigInt>(n >> shift).convert_to<double>() + 1.0;
  const double l = (std::log(top) + shift * kLn2) * (1.0 + 1e-14);
  return std::nextafter(l, INFINITY);
}

// n alpha mod 1 for n = 1, 2, ..., as left-aligned binary fractions.
class RotationWalker {
 public:
  explicit RotationWalker(const FixedReal& alpha)
      : limbs_(CirclePoints::limbs_for(alpha.frac_bits())), a_(limbs_), x_(limbs_) {
    BigInt v = alpha.mod1().raw() << (64 * limbs_ - alpha.frac_bits());
    for (std::size_t k = limbs_; k-- > 0;) {
      a_[k] = static_cast<std::uint64_t>(v & BigInt(UINT64_MAX));
      v >>= 64;
    }
  }

  void advance() {
    std::uint64_t carry = 0;
    for (std::size_t k = limbs_; k-- > 0;) {
      const std::uint64_t t = x_[k] + a_[k];
      const std::uint64_t u = t + carry;
      carry = (t < a_[k]) + (u < t);
      x_[k] = u;
    }
  }

  // ||x|| from the top limb; below the true value by less than 2^-63.
  double dist_approx() const {
    const std::uint64_t top = x_[0];
    const std::uint64_t d = top >> 63 ? ~top : top;  // 2^64 - top - 1 on the upper half
    return std::ldexp(static_cast<double>(d), -64);
  }

  FixedReal dist() const {
    BigInt v = 0;
    for (std::uint64_t limb : x_) {
      v <<= 64;
      v += limb;
    }
    return dist_to_nearest_int(FixedReal::from_raw(v, static_cast<unsigned>(64 * limbs_)));
  }

 private:
  std::size_t limbs_;
  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> x_;
};

bool decide_scale(std::uint64_t n, const RotationWalker& w, const BigRational& s, double s_d) {
  const double bound = s_d / (static_cast<double>(n) * std::log(static_cast<double>(n)));
  const double d = w.dist_approx();
  if (d > bound * (1 + 1e-9) + 0x1p-60) return false;
  return scale_condition(BigInt(n), w.dist(), s);
}

}  // namespace

ApproxFunction::ApproxFunction(Kind kind, BigRational a, BigRational b)
    : kind_(kind), a_(std::move(a)), b_(std::move(b)), a_d_(to_double(a_)), b_d_(to_double(b_)) {
  check_monotone();
}

ApproxFunction ApproxFunction::harman(const BigRational& s) {
  if (s <= 0) throw InvalidArgument("harman psi requires s > 0");
  return ApproxFunction(Kind::kHarman, s, 0);
}

ApproxFunction ApproxFunction::power(const BigRational& c, const BigRational& theta) {
  if (c <= 0) throw InvalidArgument("power psi requires c > 0");
  if (theta < 0) throw InvalidArgument("power psi requires theta >= 0 (non-increasing)");
  return ApproxFunction(Kind::kPower, c, theta);
}

ApproxFunction ApproxFunction::constant(const BigRational& c) {
  if (c <= 0 || c * 2 > 1) throw InvalidArgument("constant psi requires 0 < c <= 1/2");
  return ApproxFunction(Kind::kConstant, c, 0);
}

ApproxFunction ApproxFunction::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("psi must look like harman:S, power:C,THETA or constant:C");
  }
  std::string_view kind = text.substr(0, colon);
  std::string_view args = text.substr(colon + 1);
  if (kind == "harman") return harman(parse_rational(args));
  if (kind == "constant") return constant(parse_rational(args));
  if (kind == "power") {
    auto comma = args.find(',');
    if (comma == std::string_view::npos) throw ParseError("power psi needs C,THETA");
    return power(parse_rational(args.substr(0, comma)), parse_rational(args.substr(comma + 1)));
  }
  throw ParseError("unknown psi kind '" + std::string(kind) + "'");
}

std::string ApproxFunction::name() const {
  switch (kind_) {
    case Kind::kHarman:
      return "harman:" + to_string(a_);
    case Kind::kPower:
      return "power:" + to_string(a_) + "," + to_string(b_);
    case Kind::kConstant:
      return "constant:" + to_string(a_);
  }
  return "?";
}

double ApproxFunction::operator()(std::uint64_t n) const {
  const double x = static_cast<double>(n);
  switch (kind_) {
    case Kind::kHarman:
      return n < 2 ? 0.5 : std::min(0.5, a_d_ / (x * std::log(x)));
    case Kind::kPower:
      return std::min(0.5, a_d_ * std::pow(x, -b_d_));
    case Kind::kConstant:
      return a_d_;
  }
  return 0.0;
}

void ApproxFunction::check_monotone() const {
  double prev = (*this)(1);
  auto check = [&](std::uint64_t n) {
    const double v = (*this)(n);
    if (!(v > 0) || v > 0.5 || v > prev * (1 + 1e-12)) {
      throw InvalidArgument("psi must satisfy 0 < psi(n) <= 1/2 and be non-increasing (n = " +
                            std::to_string(n) + ")");
    }
    prev = v;
  };
  for (std::uint64_t n = 2; n <= 1000; ++n) check(n);
  for (std::uint64_t n = 2048; n <= (std::uint64_t{1} << 40); n <<= 1) check(n);
}

bool ApproxFunction::below(std::uint64_t n, const FixedReal& dist) const {
  const double p = (*this)(n);
  const double d = dist.to_double();
  if (d < p * (1 - 1e-9)) return true;
  if (d > p * (1 + 1e-9)) return false;
  return below_exact(n, dist);
}

bool ApproxFunction::below_exact(std::uint64_t n, const FixedReal& dist) const {
  const BigRational d = dist.to_rational();
  if (d * 2 >= 1) return false;  // psi <= 1/2
  switch (kind_) {
    case Kind::kConstant:
      return d < a_;
    case Kind::kHarman:
      if (n < 2) return true;
      return d * BigRational(n) * rational_from_double(log_upper(static_cast<double>(n))) < a_;
    case Kind::kPower:
      if (b_ == 0) return d < a_;
      if (b_ == 1) return d * BigRational(n) < a_;
      if (b_ * 2 == 1) return d * d * BigRational(n) < a_ * a_;
      {
        double lo = a_d_ * std::pow(static_cast<double>(n), -b_d_);
        for (int i = 0; i < 4; ++i) lo = std::nextafter(lo, 0.0);
        // a_d_ and b_d_ are themselves rounded; keep a relative margin for them.
        lo *= 1 - 1e-14;
        return d < rational_from_double(lo);
      }
  }
  return false;
}

HarmanResult harman_count(const std::function<bool(std::uint64_t)>& in_set,
                          const FixedReal& alpha, std::uint64_t N, const ApproxFunction& psi) {
  if (N < 2) throw InvalidArgument("harman_count requires N >= 2");
  HarmanResult r;
  r.N = N;
  CompensatedSum psi_all, psi_set;
  RotationWalker walk(alpha);
  for (std::uint64_t n = 1; n <= N; ++n) {
    walk.advance();
    const double p = psi(n);
    psi_all += p;
    if (in_set && !in_set(n)) continue;
    psi_set += p;
    const double d = walk.dist_approx();
    // d underestimates ||n alpha|| by < 2^-63.
    if (d > p * (1 + 1e-9)) continue;
    if (d + 0x1p-62 < p * (1 - 1e-9)) {
      ++r.S;
      continue;
    }
    if (psi.below(n, walk.dist())) ++r.S;
  }
  r.Psi_N = psi_all.value();
  r.Psi_N_B = psi_set.value();
  return r;
}

bool scale_condition(const BigInt& n, const FixedReal& dist, const BigRational& s) {
  if (n < 2) throw InvalidArgument("scale condition requires n >= 2");
  return dist.to_rational() * BigRational(n) * rational_from_double(log_upper_big(n)) < s;
}

double scale_bound(const BigInt& n, const BigRational& s) {
  const double x = n.convert_to<double>();
  return to_double(s) / (x * std::log(x));
}

GoodScales find_good_scales(const FixedReal& alpha, const ContinuedFraction& cf,
                            const BigRational& s, const BigInt& n_min, const BigInt& n_max,
                            bool exhaustive) {
  if (s <= 0) throw InvalidArgument("find_good_scales requires s > 0");
  if (n_max < n_min) throw InvalidArgument("find_good_scales requires n_min <= n_max");
  const BigInt lo = std::max(n_min, BigInt(2));
  GoodScales out;
  const auto& conv = cf.convergents();
  std::set<BigInt> seen;
  for (std::size_t k = 1; k < conv.size(); ++k) {
    const BigInt& q = conv[k].q;
    if (q < lo || q > n_max || !seen.insert(q).second) continue;
    ScaleCandidate c;
    c.n = q;
    c.convergent_index = static_cast<int>(k);
    c.dist = dist_to_nearest_int(alpha * q);
    c.bound = scale_bound(q, s);
    c.qualifies = scale_condition(q, c.dist, s);
    if (k + 1 < conv.size()) {
      // q_{k+1} s > q_k ln q_k, tested against an upper bound for ln.
      c.sufficient_by_quotient = BigRational(conv[k + 1].q) * s >
                                 BigRational(q) * rational_from_double(log_upper_big(q));
    }
    out.examined.push_back(c);
    if (c.qualifies) out.scales.push_back(c);
  }
  out.partial = conv.back().q < n_max;

  if (exhaustive) {
    if (n_max > kMaxExhaustiveScan) {
      throw BudgetExceeded("exhaustive scale scan is limited to n_max <= " +
                           std::to_string(kMaxExhaustiveScan));
    }
    const auto hi = static_cast<std::uint64_t>(n_max);
    const auto start = static_cast<std::uint64_t>(lo);
    const double s_d = to_double(s);
    RotationWalker walk(alpha);
    for (std::uint64_t n = 1; n <= hi; ++n) {
      walk.advance();
      if (n < start || seen.count(BigInt(n))) continue;
      if (!decide_scale(n, walk, s, s_d)) continue;
      ScaleCandidate c;
      c.n = n;
      c.dist = walk.dist();
      c.bound = scale_bound(c.n, s);
      c.qualifies = true;
      out.scales.push_back(c);
    }
    out.partial = false;
    std::sort(out.scales.begin(), out.scales.end(),
              [](const ScaleCandidate& a, const ScaleCandidate& b) { return a.n < b.n; });
  }
  for (const ScaleCandidate& c : out.scales) {
    if (c.dist.is_zero()) out.degenerate = true;
  }
  return out;
}

ScaleConditionFailed::ScaleConditionFailed(std::uint64_t n, double dist, double bound)
    : InvalidArgument("scale n = " + std::to_string(n) + " fails ||alpha n|| < s/(n ln n): dist = " +
                      format_sig(dist) + ", bound = " + format_sig(bound)),
      dist_(dist),
      bound_(bound) {}

std::uint64_t certificate_bound(std::uint64_t n) {
  if (n < 2) throw InvalidArgument("certificate bound requires n >= 2");
  const double x = static_cast<double>(n);
  return static_cast<std::uint64_t>(std::floor(x * std::log(x) / 2));
}

ScaleCertificate certify_scale(std::uint64_t n, const FixedReal& alpha, const BigRational& s,
                               double c, std::uint64_t m_report, const PrimeTable& table,
                               std::string alpha_descriptor, CertifyOptions options) {
  if (n < 2) throw InvalidArgument("certify_scale requires n >= 2");
  if (c < 0) throw InvalidArgument("certify_scale requires c >= 0");
  ScaleCertificate cert;
  cert.n = n;
  cert.alpha_descriptor = std::move(alpha_descriptor);
  cert.s = s;
  cert.dist = dist_to_nearest_int(alpha * BigInt(n));
  cert.bound = scale_bound(BigInt(n), s);
  if (!scale_condition(BigInt(n), cert.dist, s)) {
    throw ScaleConditionFailed(n, cert.dist.to_double(), cert.bound);
  }
  const double ln_n = std::log(static_cast<double>(n));
  cert.short_range = static_cast<std::uint64_t>(std::floor(ln_n / 10));
  if (m_report < cert.short_range) {
    throw InvalidArgument("m_report must be at least floor(ln n / 10) = " +
                          std::to_string(cert.short_range));
  }
  cert.X = certificate_bound(n);
  if (table.limit() < cert.X) {
    throw BudgetExceeded("prime table covers " + std::to_string(table.limit()) +
                         " but the certificate needs X = " + std::to_string(cert.X));
  }

  // m dist <= s/n  <=>  m <= s / (n dist).
  if (cert.dist.is_zero()) {
    cert.m_unbounded = true;
    cert.m_limit = UINT64_MAX;
  } else {
    const BigInt lim = floor(s / (BigRational(n) * cert.dist.to_rational()));
    cert.m_limit = lim > BigInt(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(lim);
  }

  cert.reps.assign(m_report, 0);
  parallel_blocks(m_report, options.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t mn = (i + 1) * n;
      if (mn <= cert.X) cert.reps[i] = r_count(mn, cert.X, table);
    }
  });

  cert.c_used = c;
  cert.threshold = c * static_cast<double>(n) / ln_n;
  for (std::uint64_t m = 1; m <= m_report; ++m) {
    if (static_cast<double>(cert.reps[m - 1]) >= cert.threshold) ++cert.qualifying_m;
  }
  for (std::uint64_t m = 1; m <= cert.short_range; ++m) {
    if (static_cast<double>(cert.reps[m - 1]) >= cert.threshold) ++cert.short_qualifying;
  }
  cert.short_range_compliant = static_cast<double>(cert.short_qualifying) >= c * ln_n;

  cert.extended_range = std::min({cert.m_limit, cert.X / n, m_report});
  for (std::uint64_t m = 1; m <= cert.extended_range; ++m) {
    if (static_cast<double>(cert.reps[m - 1]) >= cert.threshold) ++cert.extended_qualifying;
    cert.extended_pairs += 2 * cert.reps[m - 1];
  }
  return cert;
}

}  // namespace pcorr
