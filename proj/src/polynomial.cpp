#include "mroot/polynomial.hpp"

#include <stdexcept>

namespace mroot {

SparsePolynomial::SparsePolynomial(Rational constant) {
  add_term(0, constant);
}

SparsePolynomial::SparsePolynomial(Terms terms) {
  for (auto& [e, c] : terms) add_term(e, c);
}

SparsePolynomial SparsePolynomial::monomial(Rational coefficient, Exponent exponent) {
  SparsePolynomial p;
  p.add_term(exponent, coefficient);
  return p;
}

const Rational& SparsePolynomial::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
  return terms_.rbegin()->second;
}

Rational SparsePolynomial::coefficient(Exponent exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePolynomial::add_term(Exponent exponent, const Rational& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (it->second.is_zero()) terms_.erase(it);
}

std::string SparsePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string magnitude = c.abs().to_string();
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += magnitude;
      continue;
    }
    if (magnitude != "1") out += magnitude + "*";
    out += "x";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

SparsePolynomial poly_add(const SparsePolynomial& p, const SparsePolynomial& q) {
  SparsePolynomial sum = p;
  for (const auto& [e, c] : q.terms_) sum.add_term(e, c);
  return sum;
}

SparsePolynomial poly_sub(const SparsePolynomial& p, const SparsePolynomial& q) {
  return poly_add(p, poly_scale(q, -1));
}

SparsePolynomial poly_mul(const SparsePolynomial& p, const SparsePolynomial& q) {
  SparsePolynomial product;
  for (const auto& [ep, cp] : p.terms_) {
    for (const auto& [eq, cq] : q.terms_) product.add_term(ep + eq, cp * cq);
  }
  return product;
}

SparsePolynomial poly_scale(const SparsePolynomial& p, const Rational& factor) {
  SparsePolynomial::Terms scaled;
  if (factor.is_zero()) return {};
  for (const auto& [e, c] : p.terms()) scaled.emplace(e, c * factor);
  return SparsePolynomial(std::move(scaled));
}

SparsePolynomial poly_pow(const SparsePolynomial& p, unsigned long e) {
  SparsePolynomial result(1);
  for (unsigned long i = 0; i < e; ++i) result = poly_mul(result, p);
  return result;
}

SparsePolynomial poly_differentiate(const SparsePolynomial& p) {
  SparsePolynomial::Terms derived;
  for (const auto& [e, c] : p.terms()) {
    if (e == 0) continue;
    derived.emplace(e - 1, c * Rational(mpz_class(e), 1));
  }
  return SparsePolynomial(std::move(derived));
}

SparsePolynomial poly_differentiate(const SparsePolynomial& p, unsigned long k) {
  SparsePolynomial result = p;
  for (unsigned long i = 0; i < k && !result.is_zero(); ++i) result = poly_differentiate(result);
  return result;
}

std::pair<SparsePolynomial, SparsePolynomial> poly_divrem(const SparsePolynomial& p,
                                                          const SparsePolynomial& d) {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  const auto d_degree = d.degree();
  const Rational& d_lead = d.leading_coefficient();

  SparsePolynomial quotient;
  SparsePolynomial remainder = p;
  while (!remainder.is_zero() && remainder.degree() >= d_degree) {
    SparsePolynomial step = SparsePolynomial::monomial(remainder.leading_coefficient() / d_lead,
                                                       remainder.degree() - d_degree);
    quotient = poly_add(quotient, step);
    remainder = poly_sub(remainder, poly_mul(step, d));
  }
  return {std::move(quotient), std::move(remainder)};
}

Rational poly_eval_rational(const SparsePolynomial& p, const Rational& x) {
  if (p.is_zero()) return 0;
  const auto& terms = p.terms();
  auto it = terms.rbegin();
  Rational acc = it->second;
  auto previous = it->first;
  for (++it; it != terms.rend(); ++it) {
    acc *= x.pow(previous - it->first);
    acc += it->second;
    previous = it->first;
  }
  return acc * x.pow(previous);
}

}  // namespace mroot
