#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "mroot/bigfloat.hpp"
#include "mroot/coeffs.hpp"

namespace mroot {

struct IterationConfig {
  static constexpr long kDefaultGuardDigits = 15;
  static constexpr long kDefaultMaxIterations = 64;
  /// Ramped runs start at this many decimal digits.
  static constexpr long kInitialDigits = 20;

  long target_digits = 40;
  /// Termination threshold is 10^(-epsilon_exponent).
  long epsilon_exponent = 40;
  long max_iterations = kDefaultMaxIterations;
  long guard_digits = kDefaultGuardDigits;
  /// Absent means seed_initial(). Traces always record the seed actually used.
  std::optional<BigFloat> seed;
  /// Decimal digits the seed literal carries; starts the precision ramp.
  /// Absent means the digits of the seed's own precision.
  std::optional<long> seed_digits;
  bool ramping = true;

  /// Defaults with epsilon = 10^(-target_digits).
  static IterationConfig for_digits(long target_digits);
  /// Throws std::invalid_argument.
  void validate() const;
};

enum class Method { fixed_point, newton };
enum class TerminationReason { epsilon_met, max_iterations, divergence_guard };

std::string_view to_string(Method method);
std::string_view to_string(TerminationReason reason);
/// Throws std::invalid_argument for unknown names.
Method parse_method(std::string_view name);
TerminationReason parse_termination_reason(std::string_view name);

struct IterationStep {
  long n = 0;
  BigFloat x;
  /// |x_n - x_(n-1)|; absent for the seed.
  std::optional<BigFloat> delta;
  long precision_bits = 0;
};

struct IterationTrace {
  Method method = Method::fixed_point;
  RootProblem problem;
  /// Absent for Newton runs.
  std::optional<OrderParameter> order;
  IterationConfig config;
  std::vector<IterationStep> steps;
  bool converged = false;
  TerminationReason termination_reason = TerminationReason::max_iterations;
  /// |x_final^M - a|
  BigFloat residual;
  double wall_time_ms = 0.0;

  /// P+1 for the fixed-point map, 2 for Newton.
  unsigned long convergence_order() const;
  const BigFloat& final_x() const { return steps.back().x; }
};

/// exp(ln(a)/M) at 64 bits; relative error far below 1e-10.
BigFloat seed_initial(const RootProblem& problem);

/// Number of significant digits written in a decimal literal.
long seed_literal_digits(std::string_view text);
/// Parses a user seed at max(20, digits in the literal, working_digits plus
/// the literal's digits) so the decimal value survives a full-precision step.
BigFloat parse_seed(std::string_view text, long working_digits = 0);

/// r = prefactor^(-1/P): inside |1 - x^M/a| < r the map has |F'(x)| < 1.
BigFloat basin_radius(const CoefficientSet& cs);

/// True iff |1 - x^M/a| < basin_radius(cs).
bool basin_guard(const BigFloat& x, const CoefficientSet& cs);

/// F(x) = x * g(x^M), g(y) = sum_k c_k y^k by Horner, everything at `precision`.
/// Throws std::overflow_error if the exponent range is exceeded.
BigFloat evaluate_fixed_point(const CoefficientSet& cs, const BigFloat& x, Precision precision);

/// Holds c_0..c_P rounded once per precision level.
class FixedPointEvaluator {
 public:
  explicit FixedPointEvaluator(CoefficientSet cs) : cs_(std::move(cs)) {}

  const CoefficientSet& coefficients() const { return cs_; }
  BigFloat operator()(const BigFloat& x, Precision precision);

 private:
  const std::vector<BigFloat>& rounded_coefficients(Precision precision);

  CoefficientSet cs_;
  std::map<long, std::vector<BigFloat>> cache_;
};

/// x_n = F(x_(n-1)) until |x_n - x_(n-1)| < epsilon at full working precision.
/// A seed outside the basin, three consecutive growing deltas, or overflow end
/// the run with TerminationReason::divergence_guard.
IterationTrace iterate(const RootProblem& problem, OrderParameter order, const IterationConfig& config);

/// Baseline x_(n+1) = x_n - (x_n - a / x_n^(M-1)) / M under the same contract.
IterationTrace newton_iterate(const RootProblem& problem, const IterationConfig& config);

/// |x^M - a| evaluated without cancellation loss: x^M is formed exactly when
/// feasible and at no less than digits + 15 significant digits otherwise.
BigFloat verify_residual(const BigFloat& x, const RootProblem& problem, long digits);

}  // namespace mroot
