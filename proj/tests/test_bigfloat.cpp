#include "doctest.h"
#include "mroot/bigfloat.hpp"

#include <cmath>
#include <stdexcept>

using namespace mroot;

TEST_CASE("precision") {
  CHECK(Precision(10).bits() == 64);
  CHECK(Precision(200).bits() == 200);
  CHECK(Precision::from_digits(20).bits() == 68);
  CHECK(Precision::from_digits(1000).bits() == 3323);
  CHECK(Precision(3323).digits() == 1000);
  for (long d : {1L, 19L, 20L, 40L, 77L, 1000L, 100000L}) {
    CAPTURE(d);
    CHECK(Precision::from_digits(d).digits() >= d);
  }
}

TEST_CASE("construction and conversion") {
  const Precision p(128);
  CHECK(BigFloat(p).is_zero());
  CHECK(BigFloat(-7, p).to_double() == -7.0);
  CHECK(BigFloat(Rational::parse("1/4"), p).to_double() == 0.25);
  CHECK(BigFloat::parse("2.5e3", p).to_double() == 2500.0);
  CHECK(BigFloat::parse("-0.125", p).sign() == -1);
  CHECK_THROWS_AS(BigFloat::parse("", p), std::invalid_argument);
  CHECK_THROWS_AS(BigFloat::parse("1.2x", p), std::invalid_argument);
  CHECK_THROWS_AS(BigFloat::parse("inf", p), std::invalid_argument);
  CHECK_THROWS_AS(BigFloat::parse("nan", p), std::invalid_argument);
}

TEST_CASE("copy, move and rounding keep precision") {
  BigFloat a = BigFloat(Rational::parse("1/3"), Precision(256));
  BigFloat b = a;
  CHECK(b.identical(a));
  BigFloat c = std::move(b);
  CHECK(c.identical(a));
  BigFloat r = a.rounded(Precision(64));
  CHECK(r.precision().bits() == 64);
  CHECK_FALSE(r.identical(a));
  CHECK(r.rounded(Precision(256)).precision().bits() == 256);
}

TEST_CASE("arithmetic takes the wider precision") {
  const BigFloat third(Rational::parse("1/3"), Precision(64));
  const BigFloat one(1, Precision(512));
  const BigFloat sum = third + one;
  CHECK(sum.precision().bits() == 512);
  CHECK((one / BigFloat(3, Precision(64))).precision().bits() == 512);
  CHECK((BigFloat(6, Precision(64)) * BigFloat(7, Precision(64))).to_double() == 42.0);
  CHECK((BigFloat(6, Precision(64)) - BigFloat(7, Precision(64))).to_double() == -1.0);
  CHECK((-BigFloat(6, Precision(64))).to_double() == -6.0);
  CHECK(BigFloat(3, Precision(64)).pow(4).to_double() == 81.0);
  CHECK(BigFloat(-3, Precision(64)).abs().to_double() == 3.0);
}

TEST_CASE("non-finite results become errors") {
  const Precision p(64);
  CHECK_THROWS_AS(BigFloat(1, p) / BigFloat(p), std::domain_error);
  BigFloat huge = BigFloat::parse("1e100000000", p);
  CHECK_THROWS_AS(huge.pow(1000000), std::overflow_error);
  CHECK_THROWS_AS(huge * huge * huge * huge * huge * huge * huge * huge * huge * huge * huge * huge, std::overflow_error);
}

TEST_CASE("comparison") {
  const Precision p(128);
  CHECK(BigFloat(2, p) > BigFloat(1, p));
  CHECK(BigFloat(2, p) == BigFloat(2, Precision(64)));
  CHECK(BigFloat(Rational::parse("1/2"), p).compare(Rational::parse("1/2")) == 0);
  CHECK(BigFloat(Rational::parse("1/3"), p).compare(Rational::parse("1/3")) != 0);
  CHECK(BigFloat(1, p).compare(Rational::parse("1/3")) > 0);
}

TEST_CASE("log10_abs works beyond the double range") {
  const Precision p(128);
  CHECK(std::isinf(BigFloat(p).log10_abs()));
  CHECK(BigFloat(1000, p).log10_abs() == doctest::Approx(3.0));
  CHECK(BigFloat::parse("-2.5e-16639", p).log10_abs() == doctest::Approx(-16638.60206).epsilon(1e-12));
  CHECK(power_of_ten(-100000, p).log10_abs() == doctest::Approx(-100000.0).epsilon(1e-14));
}

TEST_CASE("scientific formatting") {
  const Precision p(256);
  CHECK(BigFloat(Rational::parse("2/15"), p).to_scientific(10, 4) == "1.333333333e-0001");
  CHECK(BigFloat::parse("4.8027570044e-28", p).to_scientific(10, 4) == "4.802757004e-0028");
  CHECK(BigFloat::parse("9.9999999999e5", p).to_scientific(10, 4) == "1.000000000e+0006");
  CHECK(BigFloat::parse("-3.5806485361e-16639", p).to_scientific(10, 4) == "-3.580648536e-16639");
  CHECK(BigFloat(p).to_scientific(10, 4) == "0.000000000e+0000");
  CHECK(BigFloat(12345, p).to_scientific(3) == "1.23e+4");
}

TEST_CASE("positional formatting") {
  const Precision p(256);
  CHECK(BigFloat(Rational::parse("32/15"), p).to_significant(40) == "2.133333333333333333333333333333333333333");
  CHECK(BigFloat(Rational::parse("2/3"), p).to_significant(5) == "0.66667");
  CHECK(BigFloat(Rational::parse("1/800"), p).to_significant(3) == "0.00125");
  CHECK(BigFloat(123456, p).to_significant(3) == "123000");
  CHECK(BigFloat(-2, p).to_significant(4) == "-2.000");
}

TEST_CASE("truncated fixed formatting") {
  const Precision p(256);
  CHECK(BigFloat(Rational::parse("2/3"), p).to_fixed_truncated(5) == "0.66666");
  CHECK(BigFloat(Rational::parse("32/15"), p).to_fixed_truncated(3) == "2.133");
  CHECK(BigFloat(Rational::parse("-19/9"), p).to_fixed_truncated(4) == "-2.1111");
  CHECK(BigFloat(Rational::parse("5/1024"), p).to_fixed_truncated(5) == "0.00488");
  CHECK(BigFloat(Rational::parse("5/1024"), p).to_fixed_truncated(2) == "0.00");
  CHECK(BigFloat(Rational::parse("1/800"), p).to_fixed_truncated(5) == "0.00124");
  CHECK(BigFloat(Rational::parse("1234/10"), p).to_fixed_truncated(0) == "123");
  CHECK(BigFloat(1, p).to_fixed_truncated(3) == "1.000");
  CHECK(BigFloat(p).to_fixed_truncated(2) == "0.00");
}

TEST_CASE("exact strings restore the value bit for bit") {
  for (long bits : {64L, 100L, 333L, 4096L}) {
    const Precision p(bits);
    for (const char* q : {"1/3", "-22/7", "1/1000000007", "123456789/1024"}) {
      CAPTURE(bits);
      CAPTURE(q);
      const BigFloat x(Rational::parse(q), p);
      CHECK(BigFloat::parse(x.to_exact_string(), p).identical(x));
    }
    const BigFloat tiny = power_of_ten(-5000, p) / BigFloat(3, p);
    CHECK(BigFloat::parse(tiny.to_exact_string(), p).identical(tiny));
  }
}
