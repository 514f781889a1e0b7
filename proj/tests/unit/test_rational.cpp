#include <gtest/gtest.h>

#include <cmath>

#include "radialmp/error.hpp"
#include "radialmp/rational.hpp"

using radialmp::Rational;

TEST(Rational, NormalizesSignAndGcd) {
  const Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_EQ(Rational(8, 4).to_string(), "2");
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
}

TEST(Rational, ZeroDenominatorAndOverflowThrow) {
  EXPECT_ANY_THROW(Rational(1, 0));
  EXPECT_ANY_THROW(Rational(1) / Rational(0));
  const Rational big(INT64_MAX / 2);
  EXPECT_THROW(big * big, radialmp::NumericalError);
}

TEST(Rational, Parse) {
  EXPECT_EQ(*Rational::parse("3/2"), Rational(3, 2));
  EXPECT_EQ(*Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(*Rational::parse("-4/6"), Rational(-2, 3));
  EXPECT_FALSE(Rational::parse("1.5").has_value());
  EXPECT_FALSE(Rational::parse("1/0").has_value());
  EXPECT_FALSE(Rational::parse("").has_value());
}

TEST(Rational, FromDoubleIsExactOnly) {
  EXPECT_EQ(*Rational::from_double(1.5), Rational(3, 2));
  EXPECT_EQ(*Rational::from_double(-0.25), Rational(-1, 4));
  EXPECT_EQ(*Rational::from_double(1.0 / 3.0), Rational(1, 3));
  EXPECT_FALSE(Rational::from_double(M_PI).has_value());
}

TEST(Rational, SnapWithinTolerance) {
  EXPECT_EQ(*Rational::snap(1.5 + 1e-12, 16, 1e-9), Rational(3, 2));
  EXPECT_FALSE(Rational::snap(1.5 + 1e-6, 16, 1e-9).has_value());
}
