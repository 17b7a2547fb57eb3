#pragma once

#include <map>
#include <string>
#include <utility>

#include "mroot/rational.hpp"

namespace mroot {

/// Univariate polynomial over the rationals, stored as exponent -> coefficient.
///
/// Zero coefficients are never stored, so the zero polynomial has no terms and
/// structural equality is polynomial equality.
class SparsePolynomial {
 public:
  using Exponent = unsigned long;
  using Terms = std::map<Exponent, Rational>;

  SparsePolynomial() = default;
  SparsePolynomial(Rational constant);  // NOLINT(google-explicit-constructor)
  explicit SparsePolynomial(Terms terms);

  static SparsePolynomial monomial(Rational coefficient, Exponent exponent);
  /// The polynomial x.
  static SparsePolynomial x() { return monomial(1, 1); }

  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Highest stored exponent; 0 for constants and the zero polynomial.
  Exponent degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  const Rational& leading_coefficient() const;
  /// Coefficient of x^exponent (zero when absent).
  Rational coefficient(Exponent exponent) const;

  /// e.g. "4/3*x - 1/30*x^4".
  std::string to_string() const;

  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

 private:
  void add_term(Exponent exponent, const Rational& coefficient);

  Terms terms_;

  friend SparsePolynomial poly_add(const SparsePolynomial& p, const SparsePolynomial& q);
  friend SparsePolynomial poly_mul(const SparsePolynomial& p, const SparsePolynomial& q);
};

SparsePolynomial poly_add(const SparsePolynomial& p, const SparsePolynomial& q);
SparsePolynomial poly_sub(const SparsePolynomial& p, const SparsePolynomial& q);
SparsePolynomial poly_mul(const SparsePolynomial& p, const SparsePolynomial& q);
SparsePolynomial poly_scale(const SparsePolynomial& p, const Rational& factor);
/// p^e by repeated multiplication; p^0 = 1.
SparsePolynomial poly_pow(const SparsePolynomial& p, unsigned long e);
SparsePolynomial poly_differentiate(const SparsePolynomial& p);
/// k-fold derivative.
SparsePolynomial poly_differentiate(const SparsePolynomial& p, unsigned long k);

/// Long division over the rationals: p = q*d + r with degree(r) < degree(d).
/// Throws std::domain_error when d is the zero polynomial.
std::pair<SparsePolynomial, SparsePolynomial> poly_divrem(const SparsePolynomial& p,
                                                          const SparsePolynomial& d);

/// Exact value at x. Horner over the sorted exponents, stepping by x^(gap).
Rational poly_eval_rational(const SparsePolynomial& p, const Rational& x);

inline SparsePolynomial operator+(const SparsePolynomial& p, const SparsePolynomial& q) {
  return poly_add(p, q);
}
inline SparsePolynomial operator-(const SparsePolynomial& p, const SparsePolynomial& q) {
  return poly_sub(p, q);
}
inline SparsePolynomial operator*(const SparsePolynomial& p, const SparsePolynomial& q) {
  return poly_mul(p, q);
}

}  // namespace mroot
