#include "mroot/coeffs.hpp"

#include <stdexcept>
#include <string>

namespace mroot {

RootProblem::RootProblem(Rational radicand, unsigned long index)
    : radicand_(std::move(radicand)), index_(index) {
  if (radicand_.sign() <= 0) {
    throw std::domain_error("radicand must be positive, got " + radicand_.to_string());
  }
  if (index_ < 1) throw std::domain_error("root index M must be >= 1");
}

OrderParameter::OrderParameter(unsigned long p) : p_(p) {
  if (p_ < 1) throw std::domain_error("order parameter P must be >= 1");
}

Rational product_prefactor(unsigned long m, unsigned long p) {
  Rational product = 1;
  for (unsigned long l = 1; l <= p; ++l) {
    product *= Rational(mpz_class(l * m + 1), mpz_class(l * m));
  }
  return product;
}

bool product_identity_check(unsigned long m, unsigned long p) {
  mpz_class rising = 1;
  for (unsigned long l = 1; l <= p; ++l) rising *= l * m + 1;
  mpz_class factorial;
  mpz_fac_ui(factorial.get_mpz_t(), p);
  mpz_class m_power;
  mpz_ui_pow_ui(m_power.get_mpz_t(), m, p);
  return product_prefactor(m, p) == Rational(rising, factorial * m_power);
}

CoefficientSet build_coefficients(const RootProblem& problem, OrderParameter order) {
  const unsigned long m = problem.index();
  const unsigned long p = order.value();
  const Rational prefactor = product_prefactor(m, p);
  const Rational inverse_a = problem.radicand().reciprocal();

  CoefficientSet cs{problem, order, {}, {}};
  cs.coefficients.reserve(p + 1);
  cs.exponents.reserve(p + 1);
  Rational a_power = 1;  // (-1/a)^k
  for (unsigned long k = 0; k <= p; ++k) {
    const unsigned long exponent = k * m + 1;
    cs.coefficients.push_back(prefactor * a_power * Rational(binomial(p, k), mpz_class(exponent)));
    cs.exponents.push_back(exponent);
    a_power *= -inverse_a;
  }
  return cs;
}

SparsePolynomial build_polynomial(const CoefficientSet& cs) {
  SparsePolynomial::Terms terms;
  for (std::size_t k = 0; k < cs.coefficients.size(); ++k) {
    terms.emplace(cs.exponents[k], cs.coefficients[k]);
  }
  return SparsePolynomial(std::move(terms));
}

TemplateOrder parse_template_order(std::string_view label) {
  if (label == "quadratic") return TemplateOrder::quadratic;
  if (label == "cubic") return TemplateOrder::cubic;
  if (label == "quartic") return TemplateOrder::quartic;
  if (label == "quintic") return TemplateOrder::quintic;
  throw std::invalid_argument("unknown template order '" + std::string(label) + "'");
}

SparsePolynomial template_polynomial(TemplateOrder order, const RootProblem& problem) {
  const unsigned long m = problem.index();
  const Rational& a = problem.radicand();
  const Rational mr(static_cast<long>(m));

  // x^(jM+1) / ((jM+1) a^j)
  auto term = [&](unsigned long j) {
    return SparsePolynomial::monomial(
        Rational(1) / (Rational(static_cast<long>(j * m + 1)) * a.pow(j)), j * m + 1);
  };
  auto factor = [&](long l) { return Rational(1) + Rational(1) / (Rational(l) * mr); };

  switch (order) {
    case TemplateOrder::quadratic:
      return poly_scale(term(0) - term(1), factor(1));
    case TemplateOrder::cubic:
      return poly_scale(term(0) - poly_scale(term(1), 2) + term(2), factor(1) * factor(2));
    case TemplateOrder::quartic:
      return poly_scale(term(0) - poly_scale(term(1), 3) + poly_scale(term(2), 3) - term(3),
                        factor(1) * factor(2) * factor(3));
    case TemplateOrder::quintic:
      return poly_scale(term(0) - poly_scale(term(1), 4) + poly_scale(term(2), 6) -
                            poly_scale(term(3), 4) + term(4),
                        factor(1) * factor(2) * factor(3) * factor(4));
  }
  throw std::invalid_argument("unknown template order");
}

}  // namespace mroot
