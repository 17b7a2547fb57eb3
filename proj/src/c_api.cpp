#include "mroot/mroot.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "mroot/analysis.hpp"
#include "mroot/coeffs.hpp"
#include "mroot/engine.hpp"
#include "mroot/trace_file.hpp"

struct mroot_problem {
  mroot::CoefficientSet cs;
};

struct mroot_trace {
  mroot::IterationTrace trace;
};

namespace {

thread_local std::string last_error;

mroot_status fail(mroot_status status, const std::string& message) {
  last_error = message;
  return status;
}

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Body>
mroot_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const mroot::TraceFormatError& e) {
    return fail(MROOT_ERR_PARSE, e.what());
  } catch (const mroot::InsufficientData& e) {
    return fail(MROOT_ERR_INSUFFICIENT_DATA, e.what());
  } catch (const IoError& e) {
    return fail(MROOT_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(MROOT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(MROOT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::overflow_error& e) {
    return fail(MROOT_ERR_DIVERGENCE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MROOT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MROOT_ERR_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename T>
void require(const T* pointer, const char* name) {
  if (pointer == nullptr) throw std::invalid_argument(std::string(name) + " must not be NULL");
}

const mroot::IterationStep& step_at(const mroot_trace* trace, size_t n) {
  require(trace, "trace");
  if (n >= trace->trace.steps.size()) throw std::invalid_argument("step index out of range");
  return trace->trace.steps[n];
}

mroot::IterationConfig to_config(const mroot_config* config) {
  require(config, "config");
  mroot::IterationConfig out;
  out.target_digits = config->target_digits;
  out.epsilon_exponent = config->epsilon_exponent;
  out.max_iterations = config->max_iterations;
  out.guard_digits = config->guard_digits;
  out.ramping = config->ramping != 0;
  if (config->seed != nullptr) {
    out.seed = mroot::parse_seed(config->seed, out.target_digits + out.guard_digits);
    out.seed_digits = mroot::seed_literal_digits(config->seed);
  }
  out.validate();
  return out;
}

mroot_status run_status(const mroot::IterationTrace& trace) {
  switch (trace.termination_reason) {
    case mroot::TerminationReason::epsilon_met: return MROOT_OK;
    case mroot::TerminationReason::max_iterations:
      return fail(MROOT_ERR_MAX_ITERATIONS, "no convergence within max_iterations");
    case mroot::TerminationReason::divergence_guard:
      return fail(MROOT_ERR_DIVERGENCE, "divergence guard triggered");
  }
  return MROOT_ERR_INTERNAL;
}

mroot::CoefficientSet fixed_point_coefficients(const mroot::IterationTrace& trace) {
  if (!trace.order) throw std::invalid_argument("error constants apply to fixed-point traces only");
  return mroot::build_coefficients(trace.problem, *trace.order);
}

mroot::CoefficientSet coefficients_for(const mroot::IterationTrace& trace) {
  return mroot::build_coefficients(trace.problem, trace.order.value_or(mroot::OrderParameter(1)));
}

void fill(const mroot::ErrorConstantReport& report, mroot_error_constant* out) {
  out->theoretical = report.theoretical.to_double();
  out->empirical = report.empirical.to_double();
  out->relative_mismatch = report.relative_mismatch;
  out->estimator = report.estimator == mroot::ErrorEstimator::reference_root
                       ? MROOT_ESTIMATOR_REFERENCE_ROOT
                       : MROOT_ESTIMATOR_SUCCESSIVE_DIFFERENCES;
  out->signed_estimate = report.signed_estimate ? 1 : 0;
  out->step = report.step;
}

}  // namespace

extern "C" {

const char* mroot_version(void) { return "0.1.0"; }

const char* mroot_status_string(mroot_status status) {
  switch (status) {
    case MROOT_OK: return "ok";
    case MROOT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MROOT_ERR_DIVERGENCE: return "divergence guard";
    case MROOT_ERR_MAX_ITERATIONS: return "max iterations exceeded";
    case MROOT_ERR_INSUFFICIENT_DATA: return "insufficient asymptotic steps";
    case MROOT_ERR_PARSE: return "malformed input";
    case MROOT_ERR_IO: return "i/o error";
    case MROOT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* mroot_last_error(void) { return last_error.c_str(); }

void mroot_string_free(char* text) { std::free(text); }

void mroot_config_default(mroot_config* config, long target_digits) {
  if (config == nullptr) return;
  const auto defaults = mroot::IterationConfig::for_digits(target_digits);
  config->target_digits = defaults.target_digits;
  config->epsilon_exponent = defaults.epsilon_exponent;
  config->max_iterations = defaults.max_iterations;
  config->guard_digits = defaults.guard_digits;
  config->seed = nullptr;
  config->ramping = defaults.ramping ? 1 : 0;
}

mroot_status mroot_problem_create(const char* radicand, unsigned long m, unsigned long p, mroot_problem** out) {
  return guarded([&] {
    require(radicand, "radicand");
    require(out, "out");
    *out = nullptr;
    mroot::RootProblem problem(mroot::Rational::parse(radicand), m);
    *out = new mroot_problem{mroot::build_coefficients(problem, mroot::OrderParameter(p))};
    return MROOT_OK;
  });
}

void mroot_problem_destroy(mroot_problem* problem) { delete problem; }

size_t mroot_problem_term_count(const mroot_problem* problem) {
  return problem == nullptr ? 0 : problem->cs.coefficients.size();
}

mroot_status mroot_problem_coefficient(const mroot_problem* problem, size_t k, char** fraction,
                                       unsigned long* exponent) {
  return guarded([&] {
    require(problem, "problem");
    if (k >= problem->cs.coefficients.size()) throw std::invalid_argument("coefficient index out of range");
    if (fraction != nullptr) *fraction = duplicate(problem->cs.coefficients[k].to_fraction_string());
    if (exponent != nullptr) *exponent = problem->cs.exponents[k];
    return MROOT_OK;
  });
}

mroot_status mroot_problem_radicand(const mroot_problem* problem, char** fraction) {
  return guarded([&] {
    require(problem, "problem");
    require(fraction, "fraction");
    *fraction = duplicate(problem->cs.problem.radicand().to_fraction_string());
    return MROOT_OK;
  });
}

unsigned long mroot_problem_index(const mroot_problem* problem) {
  return problem == nullptr ? 0 : problem->cs.problem.index();
}

unsigned long mroot_problem_order(const mroot_problem* problem) {
  return problem == nullptr ? 0 : problem->cs.order.value();
}

mroot_status mroot_product_identity_check(unsigned long m, unsigned long p, int* holds) {
  return guarded([&] {
    require(holds, "holds");
    if (m < 1 || p < 1) throw std::invalid_argument("M and P must be >= 1");
    *holds = mroot::product_identity_check(m, p) ? 1 : 0;
    return MROOT_OK;
  });
}

mroot_status mroot_derivative_factor_check(const mroot_problem* problem, int* holds) {
  return guarded([&] {
    require(problem, "problem");
    require(holds, "holds");
    *holds = mroot::derivative_factor_check(problem->cs) ? 1 : 0;
    return MROOT_OK;
  });
}

mroot_status mroot_template_matches(const mroot_problem* problem, int* holds) {
  return guarded([&] {
    require(problem, "problem");
    require(holds, "holds");
    const unsigned long p = problem->cs.order.value();
    if (p > 4) throw std::invalid_argument("closed-form templates exist for P = 1..4 only");
    const auto order = static_cast<mroot::TemplateOrder>(p - 1);
    *holds = mroot::template_polynomial(order, problem->cs.problem) == mroot::build_polynomial(problem->cs);
    return MROOT_OK;
  });
}

mroot_status mroot_check_fixed_point(const mroot_problem* problem, long digits, double* log10_residual) {
  return guarded([&] {
    require(problem, "problem");
    require(log10_residual, "log10_residual");
    *log10_residual = mroot::check_fixed_point(problem->cs, digits).log10_abs();
    return MROOT_OK;
  });
}

mroot_status mroot_derivative_at_root_check(const mroot_problem* problem, long digits, double* log10_error) {
  return guarded([&] {
    require(problem, "problem");
    require(log10_error, "log10_error");
    *log10_error = mroot::derivative_at_root_check(problem->cs, digits).log10_abs();
    return MROOT_OK;
  });
}

mroot_status mroot_iterate(const mroot_problem* problem, const mroot_config* config, mroot_trace** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = nullptr;
    auto trace = mroot::iterate(problem->cs.problem, problem->cs.order, to_config(config));
    *out = new mroot_trace{std::move(trace)};
    return run_status((*out)->trace);
  });
}

mroot_status mroot_newton_iterate(const mroot_problem* problem, const mroot_config* config, mroot_trace** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = nullptr;
    auto trace = mroot::newton_iterate(problem->cs.problem, to_config(config));
    *out = new mroot_trace{std::move(trace)};
    return run_status((*out)->trace);
  });
}

void mroot_trace_destroy(mroot_trace* trace) { delete trace; }

size_t mroot_trace_step_count(const mroot_trace* trace) {
  return trace == nullptr ? 0 : trace->trace.steps.size();
}

mroot_status mroot_trace_step_x(const mroot_trace* trace, size_t n, long significant, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = duplicate(step_at(trace, n).x.to_significant(significant));
    return MROOT_OK;
  });
}

mroot_status mroot_trace_step_delta(const mroot_trace* trace, size_t n, char** out) {
  return guarded([&] {
    require(out, "out");
    const auto& step = step_at(trace, n);
    *out = step.delta ? duplicate(mroot::format_delta(*step.delta)) : nullptr;
    return MROOT_OK;
  });
}

mroot_status mroot_trace_step_precision_bits(const mroot_trace* trace, size_t n, long* bits) {
  return guarded([&] {
    require(bits, "bits");
    *bits = step_at(trace, n).precision_bits;
    return MROOT_OK;
  });
}

int mroot_trace_converged(const mroot_trace* trace) { return trace != nullptr && trace->trace.converged; }

mroot_termination mroot_trace_termination(const mroot_trace* trace) {
  if (trace == nullptr) return MROOT_TERMINATION_DIVERGENCE_GUARD;
  switch (trace->trace.termination_reason) {
    case mroot::TerminationReason::epsilon_met: return MROOT_TERMINATION_EPSILON_MET;
    case mroot::TerminationReason::max_iterations: return MROOT_TERMINATION_MAX_ITERATIONS;
    case mroot::TerminationReason::divergence_guard: return MROOT_TERMINATION_DIVERGENCE_GUARD;
  }
  return MROOT_TERMINATION_DIVERGENCE_GUARD;
}

int mroot_trace_is_newton(const mroot_trace* trace) {
  return trace != nullptr && trace->trace.method == mroot::Method::newton;
}

unsigned long mroot_trace_convergence_order(const mroot_trace* trace) {
  return trace == nullptr ? 0 : trace->trace.convergence_order();
}

long mroot_trace_target_digits(const mroot_trace* trace) {
  return trace == nullptr ? 0 : trace->trace.config.target_digits;
}

mroot_status mroot_trace_residual(const mroot_trace* trace, char** out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "out");
    *out = duplicate(mroot::format_delta(trace->trace.residual));
    return MROOT_OK;
  });
}

double mroot_trace_residual_log10(const mroot_trace* trace) {
  return trace == nullptr ? NAN : trace->trace.residual.log10_abs();
}

double mroot_trace_wall_time_ms(const mroot_trace* trace) {
  return trace == nullptr ? NAN : trace->trace.wall_time_ms;
}

mroot_status mroot_trace_root(const mroot_trace* trace, long decimals, char** out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "out");
    *out = duplicate(trace->trace.final_x().to_fixed_truncated(decimals));
    return MROOT_OK;
  });
}

mroot_status mroot_trace_problem(const mroot_trace* trace, mroot_problem** out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "out");
    *out = new mroot_problem{coefficients_for(trace->trace)};
    return MROOT_OK;
  });
}

mroot_status mroot_trace_to_json(const mroot_trace* trace, char** out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "out");
    *out = duplicate(mroot::serialize_trace(trace->trace));
    return MROOT_OK;
  });
}

mroot_status mroot_trace_from_json(const char* text, mroot_trace** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    *out = new mroot_trace{mroot::parse_trace(text)};
    return MROOT_OK;
  });
}

mroot_status mroot_trace_write_file(const mroot_trace* trace, const char* path) {
  return guarded([&] {
    require(trace, "trace");
    require(path, "path");
    try {
      mroot::write_trace_file(trace->trace, path);
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
    return MROOT_OK;
  });
}

mroot_status mroot_trace_read_file(const char* path, mroot_trace** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    std::optional<mroot::IterationTrace> trace;
    try {
      trace = mroot::read_trace_file(path);
    } catch (const mroot::TraceFormatError&) {
      throw;
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
    *out = new mroot_trace{std::move(*trace)};
    return MROOT_OK;
  });
}

mroot_status mroot_trace_write_digits(const mroot_trace* trace, long decimals, const char* path) {
  return guarded([&] {
    require(trace, "trace");
    require(path, "path");
    const std::string text = mroot::format_digits(trace->trace.final_x(), decimals);
    FILE* file = std::fopen(path, "wb");
    if (file == nullptr) throw IoError(std::string("cannot open '") + path + "' for writing");
    const bool ok = std::fwrite(text.data(), 1, text.size(), file) == text.size();
    if (std::fclose(file) != 0 || !ok) throw IoError(std::string("failed writing '") + path + "'");
    return MROOT_OK;
  });
}

mroot_status mroot_estimate_order(const mroot_trace* trace, double* per_step, size_t capacity, size_t* count,
                                  double* final_estimate) {
  return guarded([&] {
    require(trace, "trace");
    const auto estimate = mroot::estimate_order(trace->trace);
    if (count != nullptr) *count = estimate.per_step.size();
    if (per_step != nullptr) {
      for (size_t i = 0; i < estimate.per_step.size() && i < capacity; ++i) per_step[i] = estimate.per_step[i];
    }
    if (final_estimate != nullptr) *final_estimate = estimate.final_estimate;
    return MROOT_OK;
  });
}

mroot_status mroot_error_constant_report(const mroot_trace* trace, long reference_digits,
                                         mroot_error_constant* report) {
  return guarded([&] {
    require(trace, "trace");
    require(report, "report");
    if (reference_digits <= 0) {
      long widest = 0;
      for (const auto& step : trace->trace.steps) widest = std::max(widest, step.precision_bits);
      reference_digits = 4 * mroot::Precision(widest).digits();
    }
    fill(mroot::error_constant_report(trace->trace, fixed_point_coefficients(trace->trace), reference_digits), report);
    return MROOT_OK;
  });
}

mroot_status mroot_error_constant_from_deltas(const mroot_trace* trace, mroot_error_constant* report) {
  return guarded([&] {
    require(trace, "trace");
    require(report, "report");
    fill(mroot::error_constant_from_deltas(trace->trace, fixed_point_coefficients(trace->trace)), report);
    return MROOT_OK;
  });
}

}  // extern "C"
