#include "pcorr/circle.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "pcorr/errors.hpp"
#include "pcorr/rational.hpp"

namespace pcorr {

namespace {

__extension__ typedef unsigned __int128 u128;

// Big-endian limb export of v mod 2^(64 * out.size()).
void export_limbs(BigInt v, std::span<std::uint64_t> out) {
  const BigInt mask = BigInt(UINT64_MAX);
  for (std::size_t k = out.size(); k-- > 0;) {
    out[k] = static_cast<std::uint64_t>(v & mask);
    v >>= 64;
  }
}

BigInt import_limbs(std::span<const std::uint64_t> in) {
  BigInt v = 0;
  for (std::uint64_t limb : in) {
    v <<= 64;
    v += limb;
  }
  return v;
}

// Left-aligned fraction of alpha (value mod 1) over `limbs` limbs.
std::vector<std::uint64_t> aligned_fraction(const FixedReal& alpha, std::size_t limbs) {
  FixedReal f = alpha.mod1();
  std::vector<std::uint64_t> out(limbs);
  export_limbs(f.raw() << (64 * limbs - alpha.frac_bits()), out);
  return out;
}

int compare_limbs(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  }
  return 0;
}

// out = a - b mod 2^(64n).
void sub_limbs(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
  std::uint64_t borrow = 0;
  for (std::size_t k = n; k-- > 0;) {
    const std::uint64_t ak = a[k], bk = b[k];
    const std::uint64_t d = ak - bk - borrow;
    borrow = (ak < bk || (ak == bk && borrow)) ? 1 : 0;
    out[k] = d;
  }
}

struct Sweep {
  const std::uint64_t* data;
  std::size_t n;
  std::size_t limbs;
  std::vector<std::uint64_t> threshold;

  const std::uint64_t* at(std::size_t p) const { return data + (p % n) * limbs; }

  // Is the forward distance from sorted position i to position p (i < p < i + n)
  // at most the threshold? Positions past n wrap once around the circle; an
  // equal point reached by wrapping is a full turn away.
  bool within(std::size_t i, std::size_t p, std::uint64_t* scratch) const {
    const std::uint64_t* ui = at(i);
    const std::uint64_t* up = at(p);
    if (p >= n && compare_limbs(up, ui, limbs) == 0) return false;
    sub_limbs(up, ui, scratch, limbs);
    return compare_limbs(scratch, threshold.data(), limbs) <= 0;
  }

  // Unordered close pairs whose first element (in sorted order) is in [lo, hi).
  std::uint64_t count(std::size_t lo, std::size_t hi) const {
    std::vector<std::uint64_t> scratch(limbs);
    std::uint64_t total = 0;
    std::size_t end = lo;  // last position known to be within reach of i
    for (std::size_t i = lo; i < hi; ++i) {
      if (end < i) end = i;
      while (end + 1 < i + n && within(i, end + 1, scratch.data())) ++end;
      total += end - i;
    }
    return total;
  }
};

}  // namespace

CirclePoints::CirclePoints(std::size_t limbs) : limbs_(limbs) {
  if (limbs == 0) throw InvalidArgument("CirclePoints needs at least one limb");
}

CirclePoints CirclePoints::dilates(std::span<const std::uint64_t> terms, const FixedReal& alpha) {
  const std::size_t L = limbs_for(alpha.frac_bits());
  const std::vector<std::uint64_t> a = aligned_fraction(alpha, L);
  CirclePoints pts(L);
  pts.data_.resize(terms.size() * L);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::uint64_t* out = pts.data_.data() + i * L;
    const u128 x = terms[i];
    u128 carry = 0;
    for (std::size_t k = L; k-- > 0;) {
      const u128 prod = a[k] * x + carry;
      out[k] = static_cast<std::uint64_t>(prod);
      carry = prod >> 64;
    }
  }
  return pts;
}

CirclePoints CirclePoints::dilates(std::span<const BigInt> terms, const FixedReal& alpha) {
  const std::size_t L = limbs_for(alpha.frac_bits());
  const BigInt a = import_limbs(aligned_fraction(alpha, L));
  const BigInt mask = pow2(static_cast<unsigned>(64 * L)) - 1;
  CirclePoints pts(L);
  pts.data_.resize(terms.size() * L);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] < 0) throw InvalidArgument("dilates requires non-negative terms");
    export_limbs(BigInt((a * terms[i]) & mask), {pts.data_.data() + i * L, L});
  }
  return pts;
}

void CirclePoints::push_back(std::span<const std::uint64_t> limbs) {
  if (limbs.size() != limbs_) throw InvalidArgument("limb count mismatch");
  data_.insert(data_.end(), limbs.begin(), limbs.end());
}

FixedReal CirclePoints::as_fixed(std::size_t i) const {
  return FixedReal::from_raw(import_limbs(point(i)), bits());
}

void CirclePoints::sort() {
  const std::size_t n = size();
  const std::size_t L = limbs_;
  if (L == 1) {
    std::sort(data_.begin(), data_.end());
    return;
  }
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  const std::uint64_t* d = data_.data();
  std::sort(order.begin(), order.end(), [d, L](std::uint32_t a, std::uint32_t b) {
    return compare_limbs(d + a * L, d + b * L, L) < 0;
  });
  std::vector<std::uint64_t> sorted(data_.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(d + order[i] * L, L, sorted.data() + i * L);
  }
  data_ = std::move(sorted);
}

bool CirclePoints::is_sorted() const {
  for (std::size_t i = 1; i < size(); ++i) {
    if (compare_limbs(point(i - 1).data(), point(i).data(), limbs_) > 0) return false;
  }
  return true;
}

std::uint64_t count_close_pairs(CirclePoints points, const BigRational& width, unsigned threads) {
  if (width < 0) throw InvalidArgument("window width must be non-negative");
  const std::uint64_t n = points.size();
  if (n < 2) return 0;
  if (width * 2 >= 1) return n * (n - 1);
  if (points.size() > UINT32_MAX) throw BudgetExceeded("too many points");

  points.sort();
  Sweep sweep{nullptr, static_cast<std::size_t>(n), points.limbs(),
              std::vector<std::uint64_t>(points.limbs())};
  sweep.data = points.point(0).data();
  // Distances are integers in units of 2^-M, so d <= width <=> d <= floor(width 2^M).
  export_limbs(floor(width * BigRational(pow2(points.bits()))), sweep.threshold);

  std::uint64_t unordered = 0;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n / 4096 + 1)));
  if (threads == 1) {
    unordered = sweep.count(0, n);
  } else {
    std::vector<std::uint64_t> partial(threads, 0);
    {
      std::vector<std::jthread> workers;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = n * t / threads, hi = n * (t + 1) / threads;
        workers.emplace_back([&, t, lo, hi] { partial[t] = sweep.count(lo, hi); });
      }
    }
    for (std::uint64_t c : partial) unordered += c;
  }
  return 2 * unordered;
}

}  // namespace pcorr
