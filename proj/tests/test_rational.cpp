#include <doctest.h>

#include <stdexcept>

#include "fractal/rational.hpp"

using namespace fractal;

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("-2/6") == Rational(-1, 3));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("0.3") == Rational(3, 10));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), std::domain_error);
}

TEST_CASE("rational_from_double is exact for dyadic values") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(0.1) != Rational(1, 10));  // 0.1 is not dyadic
  CHECK(to_double(rational_from_double(0.1)) == 0.1);   // but the round trip is exact
  CHECK_THROWS_AS(rational_from_double(1.0 / 0.0), std::domain_error);
}

TEST_CASE("RationalPoint orders lexicographically") {
  RationalPoint a{Rational(1, 2), Rational(3, 4)};
  RationalPoint b{Rational(1, 2), Rational(7, 8)};
  RationalPoint c{Rational(2, 3), Rational(0)};
  CHECK(a < b);
  CHECK(b < c);
  CHECK(a == RationalPoint{Rational(1, 2), Rational(3, 4)});
}
