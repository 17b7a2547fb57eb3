#pragma once

#include <stdexcept>
#include <string_view>
#include <vector>

#include "mroot/bigfloat.hpp"
#include "mroot/coeffs.hpp"
#include "mroot/engine.hpp"

namespace mroot {

/// Raised when a trace has too few steps in the asymptotic regime.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deltas at or above this are pre-asymptotic and excluded from estimates.
inline constexpr double kAsymptoticDeltaLog10 = -4.0;
/// Errors at or above this are excluded from the error-constant ratio.
inline constexpr double kAsymptoticErrorLog10 = -6.0;
/// Values within this many digits of a step's working precision are noise.
inline constexpr long kNoiseMarginDigits = 10;

struct OrderEstimate {
  /// rho_n = log|delta_(n+1)| / log|delta_n| over admitted consecutive pairs.
  std::vector<double> per_step;
  double final_estimate = 0.0;
  unsigned long theoretical = 0;
};

/// Throws InsufficientData unless at least three admitted deltas exist.
OrderEstimate estimate_order(const IterationTrace& trace);

enum class ErrorEstimator { reference_root, successive_differences };
std::string_view to_string(ErrorEstimator estimator);

struct ErrorConstantReport {
  /// (1/(P+1)!) * (-1)^P / a^(P/M) * prod_{l=1..P} (1 + lM)
  BigFloat theoretical;
  /// e_(n+1) / e_n^(P+1) at the last usable step. With successive
  /// differences the sign is only kept when it can be read off the iterates.
  BigFloat empirical;
  double relative_mismatch = 0.0;
  ErrorEstimator estimator = ErrorEstimator::reference_root;
  bool signed_estimate = true;
  /// n of the e_n used as the base of the ratio.
  long step = 0;
};

/// The asymptotic error constant at `precision`.
BigFloat theoretical_error_constant(const CoefficientSet& cs, Precision precision);

/// F^(P+1)(a^(1/M)) = (-1)^P / a^(P/M) * prod_{l=1..P} (1 + lM).
BigFloat theoretical_top_derivative(const CoefficientSet& cs, Precision precision);

/// a^(1/M) from the Newton baseline, accurate to `digits` decimals.
BigFloat reference_root(const RootProblem& problem, long digits);

/// Compares errors against a root computed to `reference_digits`.
/// Throws InsufficientData without a usable (e_n, e_(n+1)) pair.
ErrorConstantReport error_constant_report(const IterationTrace& trace, const CoefficientSet& cs,
                                          long reference_digits);

/// Uses e_n ~ -(x_(n+1) - x_n), i.e. reads the constant off the deltas alone.
ErrorConstantReport error_constant_from_deltas(const IterationTrace& trace, const CoefficientSet& cs);

/// |F(r) - r| for a reference root r accurate to `digits` decimals, with F
/// evaluated at twice the root's precision.
BigFloat check_fixed_point(const CoefficientSet& cs, long digits);

/// Exact algebra: F' == prefactor * (1 - x^M/a)^P, and for k = 1..P the k-th
/// derivative of F is divisible by (1 - x^M/a)^(P-k+1).
bool derivative_factor_check(const CoefficientSet& cs);

/// |F^(P+1)(r) - theoretical_top_derivative| with F^(P+1) formed exactly.
BigFloat derivative_at_root_check(const CoefficientSet& cs, long digits);

/// Evaluates an exact polynomial at a float by Horner over sorted exponents.
BigFloat evaluate_polynomial(const SparsePolynomial& p, const BigFloat& x, Precision precision);

}  // namespace mroot
