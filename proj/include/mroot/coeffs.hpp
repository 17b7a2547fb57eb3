#pragma once

#include <string_view>
#include <vector>

#include "mroot/polynomial.hpp"
#include "mroot/rational.hpp"

namespace mroot {

/// The M-th root of a positive rational radicand.
class RootProblem {
 public:
  /// Throws std::domain_error unless radicand > 0 and index >= 1.
  RootProblem(Rational radicand, unsigned long index);

  const Rational& radicand() const { return radicand_; }
  unsigned long index() const { return index_; }

  friend bool operator==(const RootProblem&, const RootProblem&) = default;

 private:
  Rational radicand_;
  unsigned long index_;
};

/// P in the fixed-point construction; the iteration converges with order P+1.
class OrderParameter {
 public:
  /// Throws std::domain_error for P = 0 (F would be the identity map).
  explicit OrderParameter(unsigned long p);

  unsigned long value() const { return p_; }
  unsigned long convergence_order() const { return p_ + 1; }

  friend bool operator==(const OrderParameter&, const OrderParameter&) = default;

 private:
  unsigned long p_;
};

/// c_0..c_P of F(x) = sum_k c_k x^(kM+1), built once and shared by every step.
struct CoefficientSet {
  RootProblem problem;
  OrderParameter order;
  std::vector<Rational> coefficients;
  std::vector<unsigned long> exponents;
};

/// prod_{l=1..P} (1 + 1/(l*M)).
Rational product_prefactor(unsigned long m, unsigned long p);

/// Checks prod (1 + 1/(lM)) == prod (1 + lM) / (P! * M^P) exactly.
bool product_identity_check(unsigned long m, unsigned long p);

CoefficientSet build_coefficients(const RootProblem& problem, OrderParameter order);

SparsePolynomial build_polynomial(const CoefficientSet& cs);

enum class TemplateOrder { quadratic, cubic, quartic, quintic };

/// Throws std::invalid_argument for an unknown label.
TemplateOrder parse_template_order(std::string_view label);

/// Closed-form fixed-point polynomials for P = 1..4, written out term by term
/// with literal binomial weights rather than through the c_k formula.
SparsePolynomial template_polynomial(TemplateOrder order, const RootProblem& problem);

}  // namespace mroot
