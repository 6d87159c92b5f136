#include "pcorr/goldbach.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcorr/errors.hpp"
#include "pcorr/numeric.hpp"

namespace pcorr {

namespace {

void check_pair_args(std::uint64_t n, std::uint64_t X, const PrimeTable& table) {
  if (n < 1 || n > X) {
    throw InvalidArgument("r(n) requires 1 <= n <= X (n = " + std::to_string(n) +
                          ", X = " + std::to_string(X) + ")");
  }
  if (table.limit() < X) {
    throw InvalidArgument("prime table covers " + std::to_string(table.limit()) +
                          " but X = " + std::to_string(X));
  }
}

}  // namespace

std::uint64_t r_count(std::uint64_t n, std::uint64_t X, const PrimeTable& table) {
  check_pair_args(n, X, table);
  std::uint64_t count = 0;
  for (std::uint64_t p : table.primes()) {
    if (p > X - n) break;
    count += table.contains(p + n) ? 1 : 0;
  }
  return count;
}

double r_weighted(std::uint64_t n, std::uint64_t X, const PrimeTable& table) {
  check_pair_args(n, X, table);
  CompensatedSum sum;
  for (std::uint64_t p : table.primes()) {
    if (p > X - n) break;
    if (table.contains(p + n)) {
      sum += std::log(static_cast<double>(p)) * std::log(static_cast<double>(p + n));
    }
  }
  return sum.value();
}

SingularSeries::SingularSeries(std::uint64_t truncation) : truncation_(truncation) {
  if (truncation < 3) throw InvalidArgument("singular series truncation P must be >= 3");
  const PrimeTable table = primes_up_to(truncation);
  long double prod = 1.0L;
  for (std::uint64_t p : table.primes()) {
    if (p < 3) continue;
    const long double q = static_cast<long double>(p - 1);
    prod *= 1.0L - 1.0L / (q * q);
  }
  base_ = static_cast<double>(2.0L * prod);
}

SingularSeriesValue SingularSeries::operator()(std::uint64_t n) const {
  if (n == 0) throw InvalidArgument("singular series requires n >= 1");
  SingularSeriesValue v;
  v.truncation_bound = truncation_;
  if (n % 2 == 1) return v;
  long double value = base_;
  for (const auto& [p, e] : factorize(n)) {
    if (p < 3) continue;
    value *= static_cast<long double>(p - 1) / static_cast<long double>(p - 2);
  }
  v.value = static_cast<double>(value);
  // The omitted factors lie in [1 - 2/P, 1].
  v.error_bound = v.value * 2.0 / static_cast<double>(truncation_);
  return v;
}

SingularSeriesValue singular_series(const BigInt& n, std::uint64_t truncation) {
  auto small = to_u64(n);
  if (!small) throw InvalidArgument("singular series: n outside [1, 2^64) cannot be factorised");
  return SingularSeries(truncation)(*small);
}

double singular_integral(double n, double X) {
  if (!(X > 0)) throw InvalidArgument("singular integral requires X > 0");
  return std::max(0.0, X - std::fabs(n));
}

GoldbachProfile goldbach_profile(std::uint64_t X, std::uint64_t n_max,
                                 const GoldbachOptions& options) {
  if (n_max < 1 || n_max > X) throw InvalidArgument("goldbach profile requires 1 <= n_max <= X");
  if (X > kMaxGoldbachX) {
    throw BudgetExceeded("X = " + std::to_string(X) + " exceeds the sieve budget " +
                         std::to_string(kMaxGoldbachX));
  }
  const PrimeTable table = primes_up_to(X);
  if (static_cast<double>(n_max) * static_cast<double>(table.count()) > kMaxGoldbachWork) {
    throw BudgetExceeded("n_max * pi(X) exceeds the work budget");
  }
  const SingularSeries series(options.truncation);

  const auto& primes = table.primes();
  std::vector<double> logs(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) logs[i] = std::log(static_cast<double>(primes[i]));

  GoldbachProfile profile;
  profile.X = X;
  profile.truncation = options.truncation;
  profile.prime_count = table.count();
  profile.rows.resize(n_max);

  parallel_blocks(n_max, options.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const std::uint64_t n = idx + 1;
      GoldbachRow& row = profile.rows[idx];
      row.n = n;
      CompensatedSum weighted;
      for (std::size_t j = 0; j < primes.size() && primes[j] <= X - n; ++j) {
        if (table.contains(primes[j] + n)) {
          ++row.r_count;
          weighted += logs[j] * std::log(static_cast<double>(primes[j] + n));
        }
      }
      row.r_weighted = weighted.value();
      row.singular_series = series(n).value;
      row.singular_integral = singular_integral(static_cast<double>(n), static_cast<double>(X));
      row.prediction = row.singular_series * row.singular_integral;
      if (row.prediction > 0) {
        row.rel_error = std::fabs(row.r_weighted - row.prediction) / row.prediction;
      }
    }
  });
  return profile;
}

ExceptionalScan exceptional_scan(const GoldbachProfile& profile, double epsilon) {
  ExceptionalScan scan;
  scan.epsilon = epsilon;
  for (const GoldbachRow& row : profile.rows) {
    if (row.n % 2 != 0 || !row.rel_error) continue;
    ++scan.even_count;
    if (*row.rel_error > epsilon) scan.exceptional.push_back(row.n);
  }
  scan.density = scan.even_count == 0 ? 0.0
                                      : static_cast<double>(scan.exceptional.size()) /
                                            static_cast<double>(scan.even_count);
  return scan;
}

double median_rel_error(const GoldbachProfile& profile) {
  std::vector<double> errs;
  for (const GoldbachRow& row : profile.rows) {
    if (row.n % 2 == 0 && row.rel_error) errs.push_back(*row.rel_error);
  }
  if (errs.empty()) return std::nan("");
  const std::size_t mid = errs.size() / 2;
  std::nth_element(errs.begin(), errs.begin() + static_cast<std::ptrdiff_t>(mid), errs.end());
  if (errs.size() % 2 == 1) return errs[mid];
  const double upper = errs[mid];
  const double lower = *std::max_element(errs.begin(), errs.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace pcorr
