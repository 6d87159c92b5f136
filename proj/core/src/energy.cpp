#include "pcorr/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_map>

#include "pcorr/errors.hpp"

namespace pcorr {

namespace {

// Dense tallies up to this many slots (4 bytes each).
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 26;

EnergyResult finish(std::size_t n, BigInt e, BigInt total) {
  EnergyResult r;
  r.N = n;
  r.E = std::move(e);
  r.tally_total = std::move(total);
  const double n3 = std::pow(static_cast<double>(n), 3);
  r.normalized = r.E.convert_to<double>() / n3;
  r.log_normalized = r.normalized * std::log(static_cast<double>(n));
  return r;
}

EnergyResult energy_u64(const std::vector<std::uint64_t>& b) {
  const std::size_t n = b.size();
  const std::uint64_t lo = b.front(), hi = b.back();  // sorted
  const std::uint64_t span = hi - lo;
  BigInt e = 0, total = 0;
  if (span <= kDenseLimit / 2) {
    // Shift by lo so sums land in [0, 2 span].
    std::vector<std::uint32_t> r(2 * span + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bi = b[i] - lo;
      r[2 * bi] += 1;
      for (std::size_t j = i + 1; j < n; ++j) r[bi + b[j] - lo] += 2;
    }
    std::uint64_t acc = 0, tot = 0;  // <= N^3 < 2^64 under the N guard
    for (std::uint32_t c : r) {
      acc += static_cast<std::uint64_t>(c) * c;
      tot += c;
    }
    e = acc;
    total = tot;
  } else {
    std::unordered_map<std::uint64_t, std::uint32_t> r;
    r.reserve(std::min<std::size_t>(n * n / 2, std::size_t{1} << 22));
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bi = b[i] - lo;
      r[2 * bi] += 1;
      for (std::size_t j = i + 1; j < n; ++j) r[bi + b[j] - lo] += 2;
    }
    std::uint64_t acc = 0, tot = 0;
    for (const auto& [sum, c] : r) {
      acc += static_cast<std::uint64_t>(c) * c;
      tot += c;
    }
    e = acc;
    total = tot;
  }
  return finish(n, std::move(e), std::move(total));
}

EnergyResult energy_big(const std::vector<BigInt>& b) {
  std::map<BigInt, std::uint32_t> r;
  for (std::size_t i = 0; i < b.size(); ++i) {
    r[2 * b[i]] += 1;
    for (std::size_t j = i + 1; j < b.size(); ++j) r[b[i] + b[j]] += 2;
  }
  BigInt e = 0, total = 0;
  for (const auto& [sum, c] : r) {
    e += BigInt(c) * c;
    total += c;
  }
  return finish(b.size(), std::move(e), std::move(total));
}

}  // namespace

EnergyResult additive_energy(std::span<const BigInt> set) {
  if (set.empty()) throw InvalidArgument("additive energy needs |B| >= 1");
  if (set.size() > kMaxEnergyN) {
    throw BudgetExceeded("exact additive energy is capped at N = " + std::to_string(kMaxEnergyN) +
                         " (quadratic cost); sampled estimators are not provided");
  }
  std::vector<BigInt> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0) throw InvalidArgument("additive energy expects non-negative elements");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("additive energy expects distinct elements");
  }
  // Sums are taken relative to the minimum, which leaves E unchanged.
  if (sorted.back() - sorted.front() < BigInt(UINT64_MAX / 4)) {
    std::vector<std::uint64_t> small;
    small.reserve(sorted.size());
    const BigInt& lo = sorted.front();
    for (const BigInt& v : sorted) small.push_back(static_cast<std::uint64_t>(v - lo));
    return energy_u64(small);
  }
  return energy_big(sorted);
}

std::vector<EnergyResult> energy_scaling_profile(const SequenceSpec& spec,
                                                 std::span<const std::size_t> n_values) {
  if (n_values.empty()) return {};
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] == 0) throw InvalidArgument("N must be >= 1");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw InvalidArgument("N values must be increasing");
    }
    if (n_values[i] > kMaxEnergyN) {
      throw BudgetExceeded("N = " + std::to_string(n_values[i]) + " exceeds the exact energy cap " +
                           std::to_string(kMaxEnergyN));
    }
  }
  const std::vector<BigInt> terms = generate(spec, n_values.back());
  std::vector<EnergyResult> out;
  out.reserve(n_values.size());
  for (std::size_t n : n_values) {
    out.push_back(additive_energy(std::span<const BigInt>(terms.data(), n)));
  }
  return out;
}

}  // namespace pcorr
