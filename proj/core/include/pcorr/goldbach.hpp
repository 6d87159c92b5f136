#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pcorr/bigint.hpp"
#include "pcorr/primes.hpp"

namespace pcorr {

inline constexpr std::uint64_t kDefaultSeriesTruncation = 10'000'000;
inline constexpr std::uint64_t kMaxGoldbachX = 200'000'000;
// Upper limit on n_max * pi(X) for a profile.
inline constexpr double kMaxGoldbachWork = 2e10;

// Number of ordered prime pairs p_i - p_j = n with p_i, p_j <= X.
// Requires 1 <= n <= X and table.limit() >= X.
std::uint64_t r_count(std::uint64_t n, std::uint64_t X, const PrimeTable& table);

// Same pairs weighted by ln p_i ln p_j (binary64 logs, compensated sum).
double r_weighted(std::uint64_t n, std::uint64_t X, const PrimeTable& table);

struct SingularSeriesValue {
  double value = 0.0;
  std::uint64_t truncation_bound = 0;  // P
  double error_bound = 0.0;            // |value - infinite product| <= error_bound
};

// Singular series for prime differences:
//   S(n) = 2 prod_{p >= 3} (1 - 1/(p-1)^2) prod_{p | n, p >= 3} (p-1)/(p-2)
// for even n and 0 for odd n. The first product is truncated at P and its tail
// is bounded with sum_{p > P} 1/(p-1)^2 < 2/P. Construct once per P and reuse.
class SingularSeries {
 public:
  explicit SingularSeries(std::uint64_t truncation = kDefaultSeriesTruncation);

  std::uint64_t truncation() const noexcept { return truncation_; }
  // 2 prod_{3 <= p <= P} (1 - 1/(p-1)^2), i.e. S(2).
  double base() const noexcept { return base_; }

  // n >= 1. Odd n gives exactly 0 with zero error bound.
  SingularSeriesValue operator()(std::uint64_t n) const;

 private:
  std::uint64_t truncation_;
  double base_ = 0.0;
};

// Convenience wrapper; factorisation is limited to n < 2^64 and larger n
// throw InvalidArgument.
SingularSeriesValue singular_series(const BigInt& n,
                                    std::uint64_t truncation = kDefaultSeriesTruncation);

// Singular integral J(n) = (1_[0,X] * 1_[-X,0])(n) = max(0, X - |n|).
double singular_integral(double n, double X);

struct GoldbachRow {
  std::uint64_t n = 0;
  std::uint64_t r_count = 0;
  double r_weighted = 0.0;
  double singular_series = 0.0;
  double singular_integral = 0.0;
  double prediction = 0.0;            // singular_series * singular_integral
  std::optional<double> rel_error;    // |r_weighted - prediction| / prediction
};

struct GoldbachProfile {
  std::uint64_t X = 0;
  std::uint64_t truncation = 0;
  std::size_t prime_count = 0;  // pi(X)
  std::vector<GoldbachRow> rows;  // n = 1 .. n_max
};

struct GoldbachOptions {
  unsigned threads = 1;
  std::uint64_t truncation = kDefaultSeriesTruncation;
};

// Rows for 1 <= n <= n_max <= X. Throws BudgetExceeded above kMaxGoldbachX
// or kMaxGoldbachWork.
GoldbachProfile goldbach_profile(std::uint64_t X, std::uint64_t n_max,
                                 const GoldbachOptions& options = {});

struct ExceptionalScan {
  double epsilon = 0.0;
  std::vector<std::uint64_t> exceptional;  // even n with rel_error > epsilon
  std::size_t even_count = 0;              // even n with a defined rel_error
  double density = 0.0;                    // exceptional.size() / even_count
};

ExceptionalScan exceptional_scan(const GoldbachProfile& profile, double epsilon);

// Median of the defined relative errors (even n); NaN if there are none.
double median_rel_error(const GoldbachProfile& profile);

}  // namespace pcorr
