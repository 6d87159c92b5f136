#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcorr/bigint.hpp"
#include "pcorr/continued_fraction.hpp"
#include "pcorr/errors.hpp"
#include "pcorr/fixed_real.hpp"
#include "pcorr/primes.hpp"

namespace pcorr {

// Non-increasing approximation function psi with 0 < psi(n) <= 1/2.
//
//   harman(s):      min(1/2, s / (n ln n)) for n >= 2, 1/2 at n = 1
//   power(c, t):    min(1/2, c n^-t)
//   constant(c):    c, with 0 < c <= 1/2
//
// below(n, d) decides d < psi(n). It is exact for constant(c) and for
// power(c, t) with t in {0, 1/2, 1}; otherwise logarithms and powers are
// evaluated with outward rounding so that it never answers true wrongly.
class ApproxFunction {
 public:
  enum class Kind { kHarman, kPower, kConstant };

  static ApproxFunction harman(const BigRational& s);
  static ApproxFunction power(const BigRational& c, const BigRational& theta);
  static ApproxFunction constant(const BigRational& c);
  // "harman:S", "power:C,THETA", "constant:C". Throws ParseError.
  static ApproxFunction parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;

  double operator()(std::uint64_t n) const;
  bool below(std::uint64_t n, const FixedReal& dist) const;

 private:
  ApproxFunction(Kind kind, BigRational a, BigRational b);
  bool below_exact(std::uint64_t n, const FixedReal& dist) const;
  void check_monotone() const;

  Kind kind_;
  BigRational a_;  // s or c
  BigRational b_;  // theta
  double a_d_ = 0.0;
  double b_d_ = 0.0;
};

struct HarmanResult {
  std::uint64_t N = 0;
  std::uint64_t S = 0;   // #{n <= N, n in B : ||n alpha|| < psi(n)}
  double Psi_N = 0.0;    // sum_{n <= N} psi(n)
  double Psi_N_B = 0.0;  // sum_{n <= N, n in B} psi(n)
};

// Counting function of Diophantine approximation restricted to B. An empty
// predicate means B = all integers. Window tests use the exact fractional
// parts of n alpha; Psi sums are compensated binary64 sums.
HarmanResult harman_count(const std::function<bool(std::uint64_t)>& in_set,
                          const FixedReal& alpha, std::uint64_t N, const ApproxFunction& psi);

// ||alpha n|| < s / (n ln n), with ln n rounded up (never accepts falsely).
// n >= 2.
bool scale_condition(const BigInt& n, const FixedReal& dist, const BigRational& s);
// s / (n ln n) in binary64, for reports.
double scale_bound(const BigInt& n, const BigRational& s);

struct ScaleCandidate {
  BigInt n;
  int convergent_index = -1;  // k for n = q_k, -1 when found by the exhaustive scan
  FixedReal dist;             // ||alpha n||
  double bound = 0.0;         // s / (n ln n)
  bool qualifies = false;
  // q_{k+1} > q_k ln q_k / s, which alone implies the condition.
  bool sufficient_by_quotient = false;
};

struct GoodScales {
  std::vector<ScaleCandidate> scales;     // qualifying n, increasing
  std::vector<ScaleCandidate> examined;   // every convergent denominator in range
  bool partial = false;    // the convergents stop below n_max
  bool degenerate = false;  // some qualifying n has ||alpha n|| = 0 (rational alpha)
};

inline constexpr std::uint64_t kMaxExhaustiveScan = 1'000'000;

// Convergent denominators q_k in [n_min, n_max] with ||q_k alpha|| <
// s / (q_k ln q_k), and with exhaustive = true (n_max <= kMaxExhaustiveScan)
// every other n in range satisfying the same condition.
GoodScales find_good_scales(const FixedReal& alpha, const ContinuedFraction& cf,
                            const BigRational& s, const BigInt& n_min, const BigInt& n_max,
                            bool exhaustive = false);

// Raised by certify_scale when ||alpha n|| < s / (n ln n) fails.
class ScaleConditionFailed : public InvalidArgument {
 public:
  ScaleConditionFailed(std::uint64_t n, double dist, double bound);
  double dist() const noexcept { return dist_; }
  double bound() const noexcept { return bound_; }

 private:
  double dist_;
  double bound_;
};

// Witness that n is a useful scale: ||alpha n|| is tiny and the first
// multiples m n are differences of many pairs of primes <= X = floor(n ln n / 2).
struct ScaleCertificate {
  std::uint64_t n = 0;
  std::string alpha_descriptor;
  BigRational s;
  FixedReal dist;                  // ||alpha n||
  double bound = 0.0;              // s / (n ln n)
  std::uint64_t m_limit = 0;       // largest m with m dist <= s/n
  bool m_unbounded = false;        // dist = 0
  std::uint64_t X = 0;
  std::vector<std::uint64_t> reps;  // reps[m-1] = r_count(m n, X), m = 1..m_report
  double c_used = 0.0;
  double threshold = 0.0;          // c n / ln n
  std::size_t qualifying_m = 0;    // m <= m_report with reps >= threshold

  // m <= floor(ln(n) / 10) and the check qualifying >= c ln n on that range.
  std::uint64_t short_range = 0;
  std::size_t short_qualifying = 0;
  bool short_range_compliant = false;

  // m <= min(m_limit, floor(X / n), m_report): every multiple with a
  // nonzero singular integral that still lands in the window.
  std::uint64_t extended_range = 0;
  std::size_t extended_qualifying = 0;
  std::uint64_t extended_pairs = 0;  // sum over that range of 2 reps(m)
};

struct CertifyOptions {
  unsigned threads = 1;
};

// Requires ||alpha n|| < s/(n ln n) (else ScaleConditionFailed),
// table.limit() >= floor(n ln n / 2) (else BudgetExceeded) and
// m_report >= floor(ln n / 10).
ScaleCertificate certify_scale(std::uint64_t n, const FixedReal& alpha, const BigRational& s,
                               double c, std::uint64_t m_report, const PrimeTable& table,
                               std::string alpha_descriptor = {}, CertifyOptions options = {});

// floor(n ln n / 2).
std::uint64_t certificate_bound(std::uint64_t n);

}  // namespace pcorr
