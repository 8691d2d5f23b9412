#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <sstream>
#include <string>

namespace diffalg {

/// Exact arbitrary-precision rational scalar. Always stored normalized
/// (coprime, positive denominator) by the backend.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// r^n for any integer n; requires r != 0 when n < 0.
inline Rational pow_rational(const Rational& r, long n) {
  if (n == 0) return Rational(1);
  Integer num = numerator(r), den = denominator(r);
  unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Integer np = pow(num, static_cast<unsigned>(k));
  Integer dp = pow(den, static_cast<unsigned>(k));
  if (n < 0) {
    // The stored denominator is positive, so np alone carries the sign;
    // move it before constructing (a negative denominator is rejected).
    if (np == 0) throw std::domain_error("pow_rational: zero base with negative exponent");
    if (np < 0) {
      np = -np;
      dp = -dp;
    }
    return Rational(dp, np);
  }
  return Rational(np, dp);
}

/// gcd over Q: gcd of numerators over lcm of denominators, always >= 0.
/// gcd_rational(a, 0) = |a|.
inline Rational gcd_rational(const Rational& a, const Rational& b) {
  Integer gn = gcd(numerator(a), numerator(b));
  Integer gd = lcm(denominator(a), denominator(b));
  Rational g(gn, gd);
  return g < 0 ? Rational(-g) : g;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace diffalg
