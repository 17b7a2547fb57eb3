#include "mroot/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace mroot {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view strip_sign(std::string_view s, bool& negative) {
  negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  return s;
}

mpz_class parse_integer(std::string_view text) {
  bool negative = false;
  std::string_view digits = strip_sign(text, negative);
  if (!all_digits(digits)) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  mpz_class z(std::string(digits), 10);
  return negative ? mpz_class(-z) : z;
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  std::string_view body = strip_sign(text, negative);

  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = body.substr(e + 1);
    bool exp_negative = false;
    std::string_view exp_digits = strip_sign(exp_text, exp_negative);
    if (!all_digits(exp_digits) || exp_digits.size() > 9) {
      throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_digits));
    if (exp_negative) exponent = -exponent;
    body = body.substr(0, e);
  }

  std::string digits;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(body)) {
      throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    }
    digits = std::string(body);
  }

  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale, 1);
}

}  // namespace

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  return parse_decimal(text);
}

Rational Rational::pow(unsigned long exponent) const {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  return Rational(num, den);
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("reciprocal of zero");
  return Rational(value_.get_den(), value_.get_num());
}

std::string Rational::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_str();
}

std::string Rational::to_fraction_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero rational");
  value_ /= rhs.value_;
  return *this;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  mpz_class result = 1;
  for (unsigned long i = 1; i <= k; ++i) {
    result *= n - k + i;
    mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), i);
  }
  return result;
}

}  // namespace mroot
