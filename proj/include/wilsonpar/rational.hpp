#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wilsonpar {

/// Exact rational with arbitrary-precision numerator and denominator. Always
/// kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  const BigInt den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

namespace detail {

inline BigInt parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t pos = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    pos = 1;
  }
  if (pos == s.size()) throw std::invalid_argument("integer without digits");
  BigInt value = 0;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c < '0' || c > '9') throw std::invalid_argument("bad digit in '" + std::string(s) + "'");
    value = value * 10 + (c - '0');
  }
  return neg ? BigInt(-value) : value;
}

}  // namespace detail

/// Parses "p/q", "p", or a plain decimal such as "-0.5" or "7.3" (taken
/// exactly, so "7.3" is 73/10). Exponent notation is not accepted.
inline Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt den = detail::parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(detail::parse_integer(text.substr(0, slash)), den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    const std::string_view frac = text.substr(dot + 1);
    digits += frac;
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad decimal");
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rational(detail::parse_integer(digits), scale);
  }
  return Rational(detail::parse_integer(text));
}

inline Rational ipow(const Rational& base, unsigned e) {
  Rational r = 1;
  for (unsigned k = 0; k < e; ++k) r *= base;
  return r;
}

inline Rational factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return Rational(f);
}

}  // namespace wilsonpar
