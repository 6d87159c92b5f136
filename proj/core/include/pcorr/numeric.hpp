#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <thread>
#include <vector>

namespace pcorr {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Calls fn(lo, hi) on `threads` contiguous blocks covering [0, count).
// Blocks are fixed by (count, threads) so callers writing into per-index
// slots get deterministic output.
template <class Fn>
void parallel_blocks(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = count * t / threads, hi = count * (t + 1) / threads;
    workers.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
}

// Natural log rounded up by two ulps; std::log is faithfully rounded on the
// platforms we target, so the result is an upper bound for ln x.
inline double log_upper(double x) {
  const double l = std::log(x);
  return std::nextafter(std::nextafter(l, INFINITY), INFINITY);
}

inline double log_lower(double x) {
  const double l = std::log(x);
  return std::nextafter(std::nextafter(l, -INFINITY), -INFINITY);
}

}  // namespace pcorr
