#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <mpfr.h>

#include "mroot/rational.hpp"

namespace mroot {

/// Working precision in bits. Never below 64.
class Precision {
 public:
  static constexpr long kMinBits = 64;

  explicit Precision(long bits);
  /// Smallest precision holding `digits` significant decimal digits.
  static Precision from_digits(long digits);

  long bits() const { return bits_; }
  /// Decimal digits represented, floor(bits * log10 2).
  long digits() const;

  friend auto operator<=>(const Precision&, const Precision&) = default;

 private:
  long bits_;
};

/// Arbitrary-precision binary float with an explicit precision, backed by MPFR.
/// All rounding is to nearest. Arithmetic results take the larger operand
/// precision; operations that produce inf or NaN throw std::overflow_error.
class BigFloat {
 public:
  explicit BigFloat(Precision precision = Precision(Precision::kMinBits));
  BigFloat(long value, Precision precision);
  BigFloat(const Rational& value, Precision precision);
  /// Parses a decimal or scientific string, rounded to `precision`.
  /// Throws std::invalid_argument on malformed input.
  static BigFloat parse(std::string_view text, Precision precision);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  Precision precision() const { return Precision(mpfr_get_prec(value_)); }
  /// Copy rounded to a new precision.
  BigFloat rounded(Precision precision) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  BigFloat abs() const;
  BigFloat pow(unsigned long exponent) const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// log10 |x| as a double; -infinity for zero. Safe for exponents far
  /// outside the double range.
  double log10_abs() const;
  /// Exact comparison against a rational.
  int compare(const Rational& q) const { return mpfr_cmp_q(value_, q.gmp().get_mpq_t()); }

  /// Round-to-nearest scientific rendering with `significant` (>= 2) digits,
  /// "d.ddd" + "e" + sign + at least `exponent_width` exponent digits.
  std::string to_scientific(int significant, int exponent_width = 1) const;
  /// Positional rendering with `significant` digits rounded to nearest, e.g.
  /// "2.133...3". Falls back to scientific when the magnitude is extreme.
  std::string to_significant(long significant) const;
  /// Enough digits that parse(to_exact_string(), precision()) restores the
  /// value bit for bit.
  std::string to_exact_string() const;
  /// Integer part, ".", then exactly `decimals` digits, truncated toward zero.
  std::string to_fixed_truncated(long decimals) const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);

  friend BigFloat operator+(const BigFloat& lhs, const BigFloat& rhs);
  friend BigFloat operator-(const BigFloat& lhs, const BigFloat& rhs);
  friend BigFloat operator*(const BigFloat& lhs, const BigFloat& rhs);
  friend BigFloat operator/(const BigFloat& lhs, const BigFloat& rhs);
  friend BigFloat operator-(const BigFloat& x);

  friend bool operator==(const BigFloat& lhs, const BigFloat& rhs) {
    return mpfr_equal_p(lhs.value_, rhs.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigFloat& lhs, const BigFloat& rhs) {
    return mpfr_cmp(lhs.value_, rhs.value_) <=> 0;
  }

  /// Bit-identical value and precision.
  bool identical(const BigFloat& other) const;

 private:
  void check_finite(const char* what) const;

  mpfr_t value_;
};

/// 10^exponent rounded to `precision`.
BigFloat power_of_ten(long exponent, Precision precision);

}  // namespace mroot
