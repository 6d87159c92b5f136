#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace pcorr {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt pow2(unsigned bits) {
  BigInt r = 1;
  r <<= bits;
  return r;
}

// Value as uint64_t when 0 <= v < 2^64.
inline std::optional<std::uint64_t> to_u64(const BigInt& v) {
  if (v < 0 || v > BigInt(UINT64_MAX)) {
    return std::nullopt;
  }
  return static_cast<std::uint64_t>(v);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace pcorr
