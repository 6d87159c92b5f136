#pragma once

#include <string>
#include <string_view>

#include "pcorr/bigint.hpp"

namespace pcorr {

// Parses "3", "-0.25", "1e-3", "2.5E2" or "p/q" into an exact rational.
// Throws ParseError on malformed input.
BigRational parse_rational(std::string_view text);

// Exact value of a finite double.
BigRational rational_from_double(double x);

double to_double(const BigRational& r);

// floor and ceil of a rational.
BigInt floor_div(const BigInt& num, const BigInt& den);
BigInt floor(const BigRational& r);
BigInt ceil(const BigRational& r);

// Shortest text the user would recognise: integer, "p/q", never lossy.
std::string to_string(const BigRational& r);

// Decimal rendering with the given number of significant digits.
std::string format_sig(double x, int digits = 12);

}  // namespace pcorr
