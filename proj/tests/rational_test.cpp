#include <gtest/gtest.h>

#include "affcopy/rational.hpp"

namespace affcopy {
namespace {

TEST(Rational, CanonicalForm) {
  const Rational r(BigInt(6), BigInt(-8));
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 4);
  EXPECT_EQ(r.str(), "-3/4");
  EXPECT_EQ(Rational(10, 5).str(), "2");
}

TEST(Rational, ZeroDenominatorRejected) {
  EXPECT_THROW(Rational(1, 0), std::domain_error);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, ParseRoundTrip) {
  for (const char* text : {"0", "7", "-7", "1/3", "-22/7", "123456789012345678901234567891/2"})
    EXPECT_EQ(Rational::parse(text).str(), text);
  EXPECT_EQ(Rational::parse("4/6").str(), "2/3");
  EXPECT_EQ(Rational::parse("+5").str(), "5");
}

TEST(Rational, ParseRejectsMalformed) {
  for (const char* text : {"", "/", "1/", "/2", "1/0", "1/-2", "a", "1.5", "1 /2", "--1"})
    EXPECT_THROW(Rational::parse(text), std::invalid_argument) << text;
}

TEST(Rational, ExactArithmetic) {
  const Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(1, 2) - Rational(3, 4), Rational(-1, 4));
  EXPECT_LT(Rational(1, 3), Rational(34, 100));
  EXPECT_EQ(pow(Rational(2, 3), 3), Rational(8, 27));
  EXPECT_EQ(pow(Rational(-1, 2), 3), Rational(-1, 8));
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_EQ(Rational(4).floor(), 4);
}

}  // namespace
}  // namespace affcopy
