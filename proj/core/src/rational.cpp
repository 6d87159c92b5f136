#include "pcorr/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pcorr/errors.hpp"

namespace pcorr {

namespace {

BigInt parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("expected digits in '" + std::string(whole) + "'");
  BigInt v = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ParseError("unexpected character '" + std::string(1, ch) + "' in '" +
                       std::string(whole) + "'");
    }
    v = v * 10 + (ch - '0');
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigRational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view exp_text = text.substr(epos + 1);
    text = text.substr(0, epos);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    BigInt e = parse_digits(exp_text, whole);
    if (e > 4096) throw ParseError("exponent out of range in '" + std::string(whole) + "'");
    exponent = exp_negative ? -static_cast<long>(e) : static_cast<long>(e);
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw ParseError("expected a number, got '" + std::string(whole) + "'");
  }
  BigInt num = int_part.empty() ? BigInt(0) : parse_digits(int_part, whole);
  if (!frac_part.empty()) {
    num = num * boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size())) +
          parse_digits(frac_part, whole);
    exponent -= static_cast<long>(frac_part.size());
  }
  BigRational r(num);
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
  r = exponent >= 0 ? r * BigRational(scale) : r / BigRational(scale);
  return negative ? -r : r;
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  std::string_view t = trim(text);
  if (t.empty()) throw ParseError("empty number");
  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    BigRational num = parse_decimal(trim(t.substr(0, slash)), t);
    BigRational den = parse_decimal(trim(t.substr(slash + 1)), t);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(t) + "'");
    return num / den;
  }
  return parse_decimal(t, t);
}

BigRational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("non-finite double");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // mant * 2^53 is an integer for every finite double.
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  BigRational r{BigInt(m)};
  if (exp >= 0) {
    r *= BigRational(pow2(static_cast<unsigned>(exp)));
  } else {
    r /= BigRational(pow2(static_cast<unsigned>(-exp)));
  }
  return r;
}

double to_double(const BigRational& r) { return r.convert_to<double>(); }

BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q, rem;
  boost::multiprecision::divide_qr(num, den, q, rem);
  if (rem != 0 && ((rem < 0) != (den < 0))) --q;
  return q;
}

BigInt floor(const BigRational& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

BigInt ceil(const BigRational& r) { return -floor(-r); }

std::string to_string(const BigRational& r) {
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

std::string format_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace pcorr
