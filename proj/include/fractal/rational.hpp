#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace fractal {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite input");
  return Rational(x);
}

/// Parses "p/q", "p" or a decimal literal ("0.3" -> 3/10) exactly.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) throw std::domain_error("parse_rational: zero denominator");
    return Rational(p, q);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    bool negative = !digits.empty() && (digits[0] == '-' || digits[0] == '+');
    std::string body = negative ? digits.substr(1) : digits;
    // strip leading zeros: cpp_int would read "025" as octal
    auto first = body.find_first_not_of('0');
    body = first == std::string::npos ? "0" : body.substr(first);
    if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
      throw std::domain_error("parse_rational: malformed number '" + s + "'");
    BigInt num(body);
    if (negative && digits[0] == '-') num = -num;
    BigInt den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(num, den);
  }
  return Rational(BigInt(s));
}

struct RationalPoint {
  Rational x;
  Rational y;

  bool operator==(const RationalPoint& o) const { return x == o.x && y == o.y; }
  bool operator<(const RationalPoint& o) const {
    if (x != o.x) return x < o.x;
    return y < o.y;
  }
};

}  // namespace fractal
