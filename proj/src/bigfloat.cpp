#include "mroot/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mroot {

namespace {

constexpr double kLog2Of10 = 3.32192809488736234787;
constexpr double kLog10Of2 = 0.30102999566398119521;

struct MpfrString {
  char* text;
  mpfr_exp_t exponent;
  MpfrString(size_t digits, mpfr_srcptr x, mpfr_rnd_t rnd) : text(nullptr), exponent(0) {
    text = mpfr_get_str(nullptr, &exponent, 10, digits, x, rnd);
    if (text == nullptr) throw std::runtime_error("mpfr_get_str failed");
  }
  ~MpfrString() { mpfr_free_str(text); }
  MpfrString(const MpfrString&) = delete;
  MpfrString& operator=(const MpfrString&) = delete;
};

// Splits MPFR's "[-]ddd" digit string into sign and digits.
std::pair<bool, std::string> split_sign(const char* text) {
  std::string s(text);
  bool negative = !s.empty() && s.front() == '-';
  if (negative) s.erase(0, 1);
  return {negative, s};
}

std::string format_exponent(long e, int width) {
  std::string digits = std::to_string(e < 0 ? -e : e);
  if (static_cast<int>(digits.size()) < width) digits.insert(0, width - digits.size(), '0');
  return std::string(e < 0 ? "-" : "+") + digits;
}

}  // namespace

Precision::Precision(long bits) : bits_(std::max(bits, kMinBits)) {}

Precision Precision::from_digits(long digits) {
  return Precision(static_cast<long>(std::ceil(static_cast<double>(digits) * kLog2Of10)) + 1);
}

long Precision::digits() const {
  return static_cast<long>(std::floor(static_cast<double>(bits_) * kLog10Of2));
}

BigFloat::BigFloat(Precision precision) {
  mpfr_init2(value_, precision.bits());
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(long value, Precision precision) {
  mpfr_init2(value_, precision.bits());
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, Precision precision) {
  mpfr_init2(value_, precision.bits());
  mpfr_set_q(value_, value.gmp().get_mpq_t(), MPFR_RNDN);
  check_finite("rational conversion");
}

BigFloat BigFloat::parse(std::string_view text, Precision precision) {
  const std::string s(text);
  BigFloat result(precision);
  if (s.empty()) throw std::invalid_argument("empty decimal number");
  char* end = nullptr;
  mpfr_strtofr(result.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0' || !mpfr_number_p(result.value_)) {
    throw std::invalid_argument("not a finite decimal number: '" + s + "'");
  }
  return result;
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::rounded(Precision precision) const {
  BigFloat result(precision);
  mpfr_set(result.value_, value_, MPFR_RNDN);
  return result;
}

BigFloat BigFloat::abs() const {
  BigFloat result(precision());
  mpfr_abs(result.value_, value_, MPFR_RNDN);
  return result;
}

BigFloat BigFloat::pow(unsigned long exponent) const {
  BigFloat result(precision());
  mpfr_pow_ui(result.value_, value_, exponent, MPFR_RNDN);
  result.check_finite("power");
  return result;
}

double BigFloat::log10_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mantissa = mpfr_get_d_2exp(&exp2, value_, MPFR_RNDN);
  return std::log10(std::fabs(mantissa)) + static_cast<double>(exp2) * kLog10Of2;
}

std::string BigFloat::to_scientific(int significant, int exponent_width) const {
  significant = std::max(significant, 2);
  if (is_zero()) {
    return "0." + std::string(significant - 1, '0') + "e" + format_exponent(0, exponent_width);
  }
  MpfrString str(static_cast<size_t>(significant), value_, MPFR_RNDN);
  auto [negative, digits] = split_sign(str.text);
  std::string out = negative ? "-" : "";
  out += digits.substr(0, 1) + "." + digits.substr(1);
  return out + "e" + format_exponent(str.exponent - 1, exponent_width);
}

std::string BigFloat::to_significant(long significant) const {
  significant = std::max(significant, 2L);
  if (is_zero()) return "0." + std::string(significant - 1, '0');
  MpfrString str(static_cast<size_t>(significant), value_, MPFR_RNDN);
  auto [negative, digits] = split_sign(str.text);
  const long e = str.exponent;
  std::string out = negative ? "-" : "";
  if (e > significant + 64 || e < -64) {
    out += digits.substr(0, 1) + "." + digits.substr(1) + "e" + format_exponent(e - 1, 1);
  } else if (e <= 0) {
    out += "0." + std::string(-e, '0') + digits;
  } else if (e < significant) {
    out += digits.substr(0, e) + "." + digits.substr(e);
  } else {
    out += digits + std::string(e - significant, '0');
  }
  return out;
}

std::string BigFloat::to_exact_string() const {
  return to_significant(static_cast<long>(mpfr_get_str_ndigits(10, mpfr_get_prec(value_))));
}

std::string BigFloat::to_fixed_truncated(long decimals) const {
  decimals = std::max(decimals, 0L);
  long e = 0;
  if (!is_zero()) {
    MpfrString lead(2, value_, MPFR_RNDZ);
    e = lead.exponent;
  }
  const long wanted = e + decimals;
  std::string digits;
  bool negative = sign() < 0;
  if (wanted >= 1) {
    MpfrString str(static_cast<size_t>(std::max(wanted, 2L)), value_, MPFR_RNDZ);
    auto [neg, d] = split_sign(str.text);
    digits = d.substr(0, wanted);
  }
  std::string out = negative ? "-" : "";
  if (e > 0) {
    out += digits.substr(0, e);
    if (decimals > 0) out += "." + digits.substr(e);
  } else {
    out += "0";
    if (decimals > 0) {
      std::string frac = std::string(std::min(-e, decimals), '0') + digits;
      out += "." + frac.substr(0, decimals);
    }
  }
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) { return *this = *this + rhs; }
BigFloat& BigFloat::operator-=(const BigFloat& rhs) { return *this = *this - rhs; }
BigFloat& BigFloat::operator*=(const BigFloat& rhs) { return *this = *this * rhs; }
BigFloat& BigFloat::operator/=(const BigFloat& rhs) { return *this = *this / rhs; }

namespace {
Precision wider(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

BigFloat operator+(const BigFloat& lhs, const BigFloat& rhs) {
  BigFloat result(wider(lhs, rhs));
  mpfr_add(result.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  result.check_finite("addition");
  return result;
}

BigFloat operator-(const BigFloat& lhs, const BigFloat& rhs) {
  BigFloat result(wider(lhs, rhs));
  mpfr_sub(result.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  result.check_finite("subtraction");
  return result;
}

BigFloat operator*(const BigFloat& lhs, const BigFloat& rhs) {
  BigFloat result(wider(lhs, rhs));
  mpfr_mul(result.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  result.check_finite("multiplication");
  return result;
}

BigFloat operator/(const BigFloat& lhs, const BigFloat& rhs) {
  if (rhs.is_zero()) throw std::domain_error("BigFloat division by zero");
  BigFloat result(wider(lhs, rhs));
  mpfr_div(result.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  result.check_finite("division");
  return result;
}

BigFloat operator-(const BigFloat& x) {
  BigFloat result(x.precision());
  mpfr_neg(result.value_, x.value_, MPFR_RNDN);
  return result;
}

bool BigFloat::identical(const BigFloat& other) const {
  return mpfr_get_prec(value_) == mpfr_get_prec(other.value_) &&
         mpfr_equal_p(value_, other.value_) != 0 && mpfr_signbit(value_) == mpfr_signbit(other.value_);
}

void BigFloat::check_finite(const char* what) const {
  if (!mpfr_number_p(value_)) {
    throw std::overflow_error(std::string("non-finite result in ") + what);
  }
}

BigFloat power_of_ten(long exponent, Precision precision) {
  BigFloat result(10, precision);
  mpfr_pow_si(result.get(), result.get(), exponent, MPFR_RNDN);
  return result;
}

}  // namespace mroot
