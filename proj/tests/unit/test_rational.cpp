#include <doctest.h>

#include <sstream>

#include "expgame/rational.hpp"

using expgame::LkScale;
using expgame::Rational;

TEST_CASE("rationals are kept in lowest terms") {
  const Rational r(6, -8);
  CHECK(r.numerator() == "-3");
  CHECK(r.denominator() == "4");
  CHECK(r.str() == "-3/4");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(4, 2).is_integer());
}

TEST_CASE("parse accepts integers and fractions only") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK(Rational::parse("10/20") == Rational(1, 2));
  CHECK_FALSE(Rational::parse(""));
  CHECK_FALSE(Rational::parse("1/0"));
  CHECK_FALSE(Rational::parse("0.5"));
  CHECK_FALSE(Rational::parse("1/"));
  CHECK_FALSE(Rational::parse("a"));
  CHECK_THROWS_AS(Rational::from_string("x"), std::invalid_argument);
}

TEST_CASE("arithmetic and ordering are exact") {
  const Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(1, 2) * Rational(2, 3) == third);
  CHECK(Rational(1) / Rational(3) == third);
  CHECK(-third == Rational(-1, 3));
  CHECK(third < Rational(1, 2));
  CHECK(abs(Rational(-5, 7)) == Rational(5, 7));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  std::ostringstream os;
  os << Rational(7, 3);
  CHECK(os.str() == "7/3");
}

TEST_CASE("numbers far beyond 64 bits stay exact") {
  Rational x(1);
  for (int i = 0; i < 100; ++i) x = x * Rational(3, 2);
  for (int i = 0; i < 100; ++i) x = x * Rational(2, 3);
  CHECK(x == Rational(1));
}

TEST_CASE("L_k scale") {
  const LkScale s(4);
  CHECK(s.size() == 5);
  CHECK(s.contains(Rational(1, 2)));
  CHECK_FALSE(s.contains(Rational(1, 3)));
  CHECK_FALSE(s.contains(Rational(5, 4)));
  CHECK_FALSE(s.contains(Rational(-1, 4)));
  CHECK(s.level_of(Rational(3, 4)) == 3u);
  CHECK(s.value(2) == Rational(1, 2));
  CHECK_THROWS(LkScale(0));
}
