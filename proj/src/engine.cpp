#include "mroot/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace mroot {

IterationConfig IterationConfig::for_digits(long target_digits) {
  IterationConfig config;
  config.target_digits = target_digits;
  config.epsilon_exponent = target_digits;
  return config;
}

void IterationConfig::validate() const {
  if (target_digits < 1) throw std::invalid_argument("target_digits must be >= 1");
  if (epsilon_exponent > target_digits) {
    throw std::invalid_argument("epsilon_exponent must not exceed target_digits");
  }
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (guard_digits < 0) throw std::invalid_argument("guard_digits must be >= 0");
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::fixed_point: return "fixed_point";
    case Method::newton: return "newton";
  }
  return "unknown";
}

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::epsilon_met: return "epsilon_met";
    case TerminationReason::max_iterations: return "max_iterations";
    case TerminationReason::divergence_guard: return "divergence_guard";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "fixed_point") return Method::fixed_point;
  if (name == "newton") return Method::newton;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

TerminationReason parse_termination_reason(std::string_view name) {
  if (name == "epsilon_met") return TerminationReason::epsilon_met;
  if (name == "max_iterations") return TerminationReason::max_iterations;
  if (name == "divergence_guard") return TerminationReason::divergence_guard;
  throw std::invalid_argument("unknown termination reason '" + std::string(name) + "'");
}

unsigned long IterationTrace::convergence_order() const {
  return order ? order->convergence_order() : 2;
}

BigFloat seed_initial(const RootProblem& problem) {
  BigFloat x(problem.radicand(), Precision(Precision::kMinBits));
  mpfr_log(x.get(), x.get(), MPFR_RNDN);
  mpfr_div_ui(x.get(), x.get(), problem.index(), MPFR_RNDN);
  mpfr_exp(x.get(), x.get(), MPFR_RNDN);
  return x;
}

long seed_literal_digits(std::string_view text) {
  std::string_view mantissa = text.substr(0, text.find_first_of("eE"));
  return std::count_if(mantissa.begin(), mantissa.end(), [](char c) { return c >= '0' && c <= '9'; });
}

BigFloat parse_seed(std::string_view text, long working_digits) {
  const long digits = seed_literal_digits(text);
  const long wanted = std::max({digits, IterationConfig::kInitialDigits, working_digits > 0 ? working_digits + digits : 0L});
  return BigFloat::parse(text, Precision::from_digits(wanted));
}

BigFloat basin_radius(const CoefficientSet& cs) {
  const Precision precision(128);
  BigFloat r(product_prefactor(cs.problem.index(), cs.order.value()), precision);
  mpfr_rootn_ui(r.get(), r.get(), cs.order.value(), MPFR_RNDN);
  return BigFloat(1, precision) / r;
}

namespace {

// 1 - x^M/a with x^M formed exactly when that stays affordable.
BigFloat relative_defect(const BigFloat& x, const RootProblem& problem) {
  constexpr long kExactPowerLimitBits = 1L << 24;
  const long exact_bits = x.precision().bits() * static_cast<long>(problem.index());
  const Precision precision(std::min(std::max(exact_bits, 128L), kExactPowerLimitBits));
  BigFloat ratio = x.rounded(precision).pow(problem.index());
  mpfr_div_q(ratio.get(), ratio.get(), problem.radicand().gmp().get_mpq_t(), MPFR_RNDN);
  return BigFloat(1, precision) - ratio;
}

bool is_exact_root(const BigFloat& x, const RootProblem& problem) {
  constexpr long kExactPowerLimitBits = 1L << 24;
  const long exact_bits = x.precision().bits() * static_cast<long>(problem.index());
  if (exact_bits > kExactPowerLimitBits || x.sign() <= 0) return false;
  BigFloat power = x.rounded(Precision(exact_bits)).pow(problem.index());
  return power.compare(problem.radicand()) == 0;
}

long integer_digits(const BigFloat& x) {
  if (x.is_zero()) return 0;
  return std::max(0L, static_cast<long>(std::floor(x.log10_abs())) + 1);
}

using StepFunction = std::function<BigFloat(const BigFloat&, Precision)>;

// Shared driver for the fixed-point map and Newton.
//
// Ramped precision: d_0 = max(20, seed digits), then
// d_n = min(full, ceil(q * d_(n-1)) + guard), with full = target + guard +
// integer digits of the root so that epsilon is an absolute threshold.
IterationTrace run(const RootProblem& problem, std::optional<OrderParameter> order, Method method,
                   const IterationConfig& config, const std::function<bool(const BigFloat&)>& seed_ok,
                   const StepFunction& step) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  const BigFloat seed = config.seed ? *config.seed : seed_initial(problem);
  const unsigned long q = order ? order->convergence_order() : 2;
  const long full_digits = config.target_digits + config.guard_digits + integer_digits(seed);
  const bool exact_seed = is_exact_root(seed, problem);

  long digits = full_digits;
  if (config.ramping) {
    const long seed_digits = config.seed_digits.value_or(seed.precision().digits());
    digits = std::min(full_digits, std::max(IterationConfig::kInitialDigits, seed_digits));
  }
  auto next_digits = [&](long previous) {
    if (!config.ramping || exact_seed) return full_digits;
    const long ramped = static_cast<long>(std::ceil(static_cast<double>(q) * static_cast<double>(previous)));
    return std::min(full_digits, ramped + config.guard_digits);
  };

  IterationConfig recorded = config;
  recorded.seed = seed;
  IterationTrace trace{.method = method,
                       .problem = problem,
                       .order = order,
                       .config = recorded,
                       .steps = {},
                       .converged = false,
                       .termination_reason = TerminationReason::max_iterations,
                       .residual = BigFloat(),
                       .wall_time_ms = 0.0};

  const Precision seed_precision = std::max(Precision::from_digits(digits), seed.precision());
  trace.steps.push_back({0, seed.rounded(seed_precision), std::nullopt, seed_precision.bits()});

  if (!seed_ok(seed)) {
    trace.termination_reason = TerminationReason::divergence_guard;
  } else {
    const BigFloat epsilon = power_of_ten(-config.epsilon_exponent, Precision(Precision::kMinBits));
    int growth_streak = 0;
    bool finished = false;
    for (long n = 1; n <= config.max_iterations && !finished; ++n) {
      digits = next_digits(digits);
      const Precision precision = Precision::from_digits(digits);
      const BigFloat& previous = trace.steps.back().x;
      BigFloat x;
      try {
        x = step(previous, precision);
      } catch (const std::overflow_error&) {
        trace.termination_reason = TerminationReason::divergence_guard;
        break;
      }
      BigFloat delta = (x - previous.rounded(precision)).abs();
      const bool grew = trace.steps.back().delta && delta > *trace.steps.back().delta;
      growth_streak = grew ? growth_streak + 1 : 0;

      const bool met = delta < epsilon && digits == full_digits;
      trace.steps.push_back({n, std::move(x), std::move(delta), precision.bits()});

      if (met) {
        trace.converged = true;
        trace.termination_reason = TerminationReason::epsilon_met;
        finished = true;
      } else if (growth_streak >= 3 || trace.steps.back().x.sign() <= 0) {
        trace.termination_reason = TerminationReason::divergence_guard;
        finished = true;
      }
    }
  }

  trace.residual = verify_residual(trace.final_x(), problem, config.target_digits)
                       .rounded(Precision(Precision::kMinBits));
  trace.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return trace;
}

}  // namespace

bool basin_guard(const BigFloat& x, const CoefficientSet& cs) {
  if (x.sign() <= 0) return false;
  return relative_defect(x, cs.problem).abs() < basin_radius(cs);
}

const std::vector<BigFloat>& FixedPointEvaluator::rounded_coefficients(Precision precision) {
  auto [it, inserted] = cache_.try_emplace(precision.bits());
  if (inserted) {
    it->second.reserve(cs_.coefficients.size());
    for (const auto& c : cs_.coefficients) it->second.emplace_back(c, precision);
  }
  return it->second;
}

BigFloat FixedPointEvaluator::operator()(const BigFloat& x, Precision precision) {
  const auto& c = rounded_coefficients(precision);
  BigFloat y(precision);
  mpfr_pow_ui(y.get(), x.get(), cs_.problem.index(), MPFR_RNDN);
  BigFloat g = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    mpfr_fma(g.get(), g.get(), y.get(), c[k].get(), MPFR_RNDN);
  }
  BigFloat result(precision);
  mpfr_mul(result.get(), x.get(), g.get(), MPFR_RNDN);
  if (!mpfr_number_p(result.get()) || !mpfr_number_p(y.get())) {
    throw std::overflow_error("fixed-point evaluation left the exponent range");
  }
  return result;
}

BigFloat evaluate_fixed_point(const CoefficientSet& cs, const BigFloat& x, Precision precision) {
  FixedPointEvaluator evaluator(cs);
  return evaluator(x, precision);
}

IterationTrace iterate(const RootProblem& problem, OrderParameter order, const IterationConfig& config) {
  FixedPointEvaluator evaluator(build_coefficients(problem, order));
  return run(
      problem, order, Method::fixed_point, config,
      [&](const BigFloat& seed) { return basin_guard(seed, evaluator.coefficients()); },
      [&](const BigFloat& x, Precision precision) { return evaluator(x, precision); });
}

IterationTrace newton_iterate(const RootProblem& problem, const IterationConfig& config) {
  const unsigned long m = problem.index();
  std::map<long, BigFloat> radicand_cache;
  auto step = [&](const BigFloat& x, Precision precision) {
    auto [it, inserted] = radicand_cache.try_emplace(precision.bits(), problem.radicand(), precision);
    const BigFloat& a = it->second;
    BigFloat power(precision);
    mpfr_pow_ui(power.get(), x.get(), m - 1, MPFR_RNDN);
    BigFloat correction = x.rounded(precision) - a / power;
    mpfr_div_ui(correction.get(), correction.get(), m, MPFR_RNDN);
    return x.rounded(precision) - correction;
  };
  return run(
      problem, std::nullopt, Method::newton, config, [](const BigFloat& seed) { return seed.sign() > 0; },
      step);
}

BigFloat verify_residual(const BigFloat& x, const RootProblem& problem, long digits) {
  constexpr long kExactPowerLimitBits = 1L << 26;
  const long exact_bits = x.precision().bits() * static_cast<long>(problem.index());
  const long magnitude_digits = integer_digits(BigFloat(problem.radicand(), Precision(Precision::kMinBits)));
  const Precision floor = Precision::from_digits(digits + IterationConfig::kDefaultGuardDigits + magnitude_digits);
  const Precision precision = std::max(Precision(std::min(exact_bits, kExactPowerLimitBits)), floor);
  BigFloat residual = x.rounded(precision).pow(problem.index());
  mpfr_sub_q(residual.get(), residual.get(), problem.radicand().gmp().get_mpq_t(), MPFR_RNDN);
  return residual.abs();
}

}  // namespace mroot
