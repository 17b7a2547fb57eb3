#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mroot {

/// Exact signed fraction of arbitrary-size integers.
///
/// Always held in canonical form: the denominator is positive and shares no
/// factor with the numerator. Every operation returns a canonical value.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  explicit Rational(const mpq_class& value);

  /// Parses "n", "n/d", or an exact decimal such as "-12.5e-3".
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  const mpq_class& gmp() const { return value_; }

  Rational pow(unsigned long exponent) const;
  Rational reciprocal() const;
  Rational abs() const { return Rational(::abs(value_)); }

  /// "n" for integers, otherwise "n/d".
  std::string to_string() const;
  /// Always "n/d", including "n/1".
  std::string to_fraction_string() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& r) { return Rational(mpq_class(-r.value_)); }

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) <=> 0;
  }

 private:
  mpq_class value_;
};

/// Binomial coefficient C(n, k) by the multiplicative formula.
mpz_class binomial(unsigned long n, unsigned long k);

}  // namespace mroot
