#include "mroot/analysis.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace mroot {

namespace {

// True when |value| sits clearly above the rounding noise of a step run at
// `precision_bits` whose iterate has magnitude |x|.
bool above_noise(const BigFloat& value, const BigFloat& x, long precision_bits) {
  if (value.is_zero()) return false;
  const long digits = Precision(precision_bits).digits();
  const double scale = x.is_zero() ? 0.0 : x.log10_abs();
  return value.log10_abs() > scale - static_cast<double>(digits) + static_cast<double>(kNoiseMarginDigits);
}

// (-1)^P * prod_{l=1..P} (1 + lM)
Rational signed_rising_product(const CoefficientSet& cs) {
  mpz_class product = 1;
  for (unsigned long l = 1; l <= cs.order.value(); ++l) product *= l * cs.problem.index() + 1;
  Rational r(product, 1);
  return cs.order.value() % 2 == 0 ? r : -r;
}

// a^(P/M)
BigFloat radicand_power(const CoefficientSet& cs, Precision precision) {
  BigFloat value(cs.problem.radicand().pow(cs.order.value()), precision);
  mpfr_rootn_ui(value.get(), value.get(), cs.problem.index(), MPFR_RNDN);
  return value;
}

void require_matching(const IterationTrace& trace, const CoefficientSet& cs) {
  if (trace.method != Method::fixed_point) {
    throw std::invalid_argument("error constant is defined for fixed-point traces only");
  }
  if (!(trace.problem == cs.problem) || !trace.order || !(*trace.order == cs.order)) {
    throw std::invalid_argument("trace and coefficient set describe different problems");
  }
}

double relative_difference(const BigFloat& empirical, const BigFloat& theoretical) {
  return ((empirical - theoretical) / theoretical).abs().to_double();
}

}  // namespace

OrderEstimate estimate_order(const IterationTrace& trace) {
  OrderEstimate estimate;
  estimate.theoretical = trace.convergence_order();

  std::vector<std::optional<double>> admitted(trace.steps.size());
  std::size_t admitted_count = 0;
  for (std::size_t i = 1; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    if (!step.delta || !above_noise(*step.delta, step.x, step.precision_bits)) continue;
    const double log_delta = step.delta->log10_abs();
    if (log_delta >= kAsymptoticDeltaLog10) continue;
    admitted[i] = log_delta;
    ++admitted_count;
  }
  for (std::size_t i = 1; i + 1 < admitted.size(); ++i) {
    if (admitted[i] && admitted[i + 1]) estimate.per_step.push_back(*admitted[i + 1] / *admitted[i]);
  }
  if (admitted_count < 3 || estimate.per_step.empty()) {
    throw InsufficientData("need at least three consecutive deltas below 1e-4, found " +
                           std::to_string(admitted_count));
  }
  estimate.final_estimate = estimate.per_step.back();
  return estimate;
}

std::string_view to_string(ErrorEstimator estimator) {
  switch (estimator) {
    case ErrorEstimator::reference_root: return "reference_root";
    case ErrorEstimator::successive_differences: return "successive_differences";
  }
  return "unknown";
}

BigFloat theoretical_error_constant(const CoefficientSet& cs, Precision precision) {
  mpz_class factorial;
  mpz_fac_ui(factorial.get_mpz_t(), cs.order.value() + 1);
  const Rational scaled = signed_rising_product(cs) / Rational(factorial, 1);
  return BigFloat(scaled, precision) / radicand_power(cs, precision);
}

BigFloat theoretical_top_derivative(const CoefficientSet& cs, Precision precision) {
  return BigFloat(signed_rising_product(cs), precision) / radicand_power(cs, precision);
}

BigFloat reference_root(const RootProblem& problem, long digits) {
  IterationTrace trace = newton_iterate(problem, IterationConfig::for_digits(digits));
  if (!trace.converged) {
    throw std::runtime_error("reference root did not converge (" +
                             std::string(to_string(trace.termination_reason)) + ")");
  }
  return trace.final_x();
}

ErrorConstantReport error_constant_report(const IterationTrace& trace, const CoefficientSet& cs,
                                          long reference_digits) {
  require_matching(trace, cs);
  const BigFloat root = reference_root(cs.problem, reference_digits);
  const Precision precision = root.precision();
  const unsigned long q = cs.order.convergence_order();

  std::vector<std::optional<BigFloat>> errors(trace.steps.size());
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    BigFloat e = step.x.rounded(std::max(precision, step.x.precision())) - root;
    if (e.is_zero() || e.log10_abs() >= kAsymptoticErrorLog10) continue;
    if (!above_noise(e, step.x, step.precision_bits)) continue;
    errors[i] = std::move(e);
  }

  for (std::size_t i = errors.size(); i-- > 1;) {
    if (!errors[i] || !errors[i - 1]) continue;
    ErrorConstantReport report;
    report.estimator = ErrorEstimator::reference_root;
    report.theoretical = theoretical_error_constant(cs, Precision(256));
    report.empirical = *errors[i] / errors[i - 1]->pow(q);
    report.relative_mismatch = relative_difference(report.empirical, report.theoretical);
    report.signed_estimate = true;
    report.step = trace.steps[i - 1].n;
    return report;
  }
  throw InsufficientData("need two consecutive errors below 1e-6 above the noise floor");
}

ErrorConstantReport error_constant_from_deltas(const IterationTrace& trace, const CoefficientSet& cs) {
  require_matching(trace, cs);
  const unsigned long q = cs.order.convergence_order();

  // index i holds delta_i = |x_i - x_(i-1)| when usable, with its sign if the
  // stored iterates resolve it.
  struct Usable {
    BigFloat magnitude;
    int sign;
  };
  std::vector<std::optional<Usable>> deltas(trace.steps.size());
  for (std::size_t i = 1; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    if (!step.delta || !above_noise(*step.delta, step.x, step.precision_bits)) continue;
    if (step.delta->log10_abs() >= kAsymptoticErrorLog10) continue;
    const BigFloat difference = step.x - trace.steps[i - 1].x;
    int sign = 0;
    if (!difference.is_zero() && std::fabs(difference.log10_abs() - step.delta->log10_abs()) < 0.3) {
      sign = difference.sign();
    }
    deltas[i] = Usable{*step.delta, sign};
  }

  for (std::size_t i = deltas.size(); i-- > 2;) {
    if (!deltas[i] || !deltas[i - 1]) continue;
    ErrorConstantReport report;
    report.estimator = ErrorEstimator::successive_differences;
    report.theoretical = theoretical_error_constant(cs, Precision(256));
    const Precision precision(256);
    // e_n ~ -(x_(n+1) - x_n)
    BigFloat next = deltas[i]->magnitude.rounded(precision);
    BigFloat base = deltas[i - 1]->magnitude.rounded(precision);
    report.signed_estimate = deltas[i]->sign != 0 && deltas[i - 1]->sign != 0;
    if (report.signed_estimate) {
      if (deltas[i]->sign > 0) next = -next;
      if (deltas[i - 1]->sign > 0) base = -base;
      report.empirical = next / base.pow(q);
      report.relative_mismatch = relative_difference(report.empirical, report.theoretical);
    } else {
      report.empirical = next / base.pow(q);
      report.relative_mismatch = relative_difference(report.empirical, report.theoretical.abs());
    }
    report.step = trace.steps[i - 2].n;
    return report;
  }
  throw InsufficientData("need two consecutive deltas below 1e-6 above the noise floor");
}

BigFloat evaluate_polynomial(const SparsePolynomial& p, const BigFloat& x, Precision precision) {
  if (p.is_zero()) return BigFloat(precision);
  const BigFloat xr = x.rounded(precision);
  const auto& terms = p.terms();
  auto it = terms.rbegin();
  BigFloat acc(it->second, precision);
  auto previous = it->first;
  for (++it; it != terms.rend(); ++it) {
    acc = acc * xr.pow(previous - it->first) + BigFloat(it->second, precision);
    previous = it->first;
  }
  return previous == 0 ? acc : acc * xr.pow(previous);
}

BigFloat check_fixed_point(const CoefficientSet& cs, long digits) {
  if (digits < 20) throw std::invalid_argument("check_fixed_point needs digits >= 20");
  const BigFloat root = reference_root(cs.problem, digits);
  const Precision wide(2 * root.precision().bits());
  const BigFloat image = evaluate_fixed_point(cs, root, wide);
  return (image - root.rounded(wide)).abs();
}

bool derivative_factor_check(const CoefficientSet& cs) {
  const unsigned long m = cs.problem.index();
  const unsigned long p = cs.order.value();
  const SparsePolynomial f =
      SparsePolynomial(1) - SparsePolynomial::monomial(cs.problem.radicand().reciprocal(), m);
  const SparsePolynomial fixed_point = build_polynomial(cs);

  SparsePolynomial derivative = poly_differentiate(fixed_point);
  if (!(derivative == poly_scale(poly_pow(f, p), product_prefactor(m, p)))) return false;

  for (unsigned long k = 1; k <= p; ++k) {
    if (k > 1) derivative = poly_differentiate(derivative);
    auto [quotient, remainder] = poly_divrem(derivative, poly_pow(f, p - k + 1));
    if (!remainder.is_zero()) return false;
  }
  return true;
}

BigFloat derivative_at_root_check(const CoefficientSet& cs, long digits) {
  if (digits < 30) throw std::invalid_argument("derivative_at_root_check needs digits >= 30");
  const SparsePolynomial top = poly_differentiate(build_polynomial(cs), cs.order.value() + 1);
  const BigFloat root = reference_root(cs.problem, digits);
  const Precision precision = root.precision();
  return (evaluate_polynomial(top, root, precision) - theoretical_top_derivative(cs, precision)).abs();
}

}  // namespace mroot
