#include "pcorr/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pcorr/errors.hpp"

namespace pcorr {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::size_t PrimeTable::pi(std::uint64_t x) const {
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                  primes_.begin());
}

PrimeTable primes_up_to(std::uint64_t limit, std::size_t segment_size) {
  if (limit > kMaxSieveBound) {
    throw BudgetExceeded("sieve bound " + std::to_string(limit) + " exceeds " +
                         std::to_string(kMaxSieveBound));
  }
  if (segment_size == 0) throw InvalidArgument("segment_size must be positive");
  PrimeTable table;
  table.limit_ = limit;
  if (limit < 2) return table;

  // Odd-only indexing: index i stands for 2i+1.
  const std::uint64_t n_odd = (limit + 1) / 2;
  table.bits_.assign(n_odd / 64 + 1, 0);
  table.primes_.reserve(static_cast<std::size_t>(
      limit < 100 ? 32 : 1.3 * static_cast<double>(limit) / std::log(static_cast<double>(limit))));
  table.primes_.push_back(2);

  const std::uint64_t root = isqrt_u64(limit);
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> sieving;  // odd primes <= root
  for (std::uint64_t i = 3; i <= root; i += 2) {
    if (!small[i]) continue;
    sieving.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += 2 * i) small[j] = 0;
  }
  std::vector<std::uint64_t> next;  // next odd index to strike per sieving prime
  next.reserve(sieving.size());
  for (std::uint64_t p : sieving) next.push_back((p * p) / 2);

  std::vector<char> seg(segment_size);
  for (std::uint64_t lo = 1; lo < n_odd; lo += segment_size) {
    const std::uint64_t hi = std::min<std::uint64_t>(lo + segment_size, n_odd);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo), 1);
    for (std::size_t k = 0; k < sieving.size(); ++k) {
      std::uint64_t j = next[k];
      if (j >= hi) continue;
      const std::uint64_t p = sieving[k];
      for (; j < hi; j += p) seg[j - lo] = 0;
      next[k] = j;
    }
    for (std::uint64_t i = lo; i < hi; ++i) {
      if (seg[i - lo]) {
        table.primes_.push_back(2 * i + 1);
        table.bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
      }
    }
  }
  return table;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These bases are deterministic below 3.3e24.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("cannot factorise 0");
  std::vector<std::uint64_t> flat;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      flat.push_back(p);
      n /= p;
    }
  }
  factor_rec(n, flat);
  std::sort(flat.begin(), flat.end());
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p : flat) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::uint64_t nth_prime_upper_bound(std::uint64_t n) {
  if (n < 6) return 13;
  const double x = static_cast<double>(n);
  // Rosser: p_n < n (ln n + ln ln n) for n >= 6.
  return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 1;
}

}  // namespace pcorr
