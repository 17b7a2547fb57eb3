#ifndef MROOT_MROOT_H
#define MROOT_MROOT_H

/*
 * C interface to the mroot library: arbitrary-precision M-th roots of positive
 * rationals by a fixed-point polynomial iteration of order P+1.
 *
 * Every function returns an mroot_status. On failure a message for the calling
 * thread is available from mroot_last_error(). Strings handed out through
 * char** parameters are owned by the caller and released with
 * mroot_string_free().
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MROOT_BUILDING_LIBRARY)
#    define MROOT_API __declspec(dllexport)
#  else
#    define MROOT_API __declspec(dllimport)
#  endif
#else
#  define MROOT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mroot_status {
  MROOT_OK = 0,
  MROOT_ERR_INVALID_ARGUMENT = 1,
  /* seed outside the certified basin, growing deltas, or overflow */
  MROOT_ERR_DIVERGENCE = 2,
  MROOT_ERR_MAX_ITERATIONS = 3,
  MROOT_ERR_INSUFFICIENT_DATA = 5,
  MROOT_ERR_PARSE = 6,
  MROOT_ERR_IO = 7,
  MROOT_ERR_INTERNAL = 9
} mroot_status;

typedef enum mroot_termination {
  MROOT_TERMINATION_EPSILON_MET = 0,
  MROOT_TERMINATION_MAX_ITERATIONS = 1,
  MROOT_TERMINATION_DIVERGENCE_GUARD = 2
} mroot_termination;

typedef enum mroot_estimator {
  MROOT_ESTIMATOR_REFERENCE_ROOT = 0,
  MROOT_ESTIMATOR_SUCCESSIVE_DIFFERENCES = 1
} mroot_estimator;

/* Radicand a, root index M and order parameter P with its exact coefficients. */
typedef struct mroot_problem mroot_problem;
/* Result of one iteration run. Immutable. */
typedef struct mroot_trace mroot_trace;

typedef struct mroot_config {
  long target_digits;
  long epsilon_exponent; /* epsilon = 10^-epsilon_exponent */
  long max_iterations;
  long guard_digits;
  const char* seed; /* decimal string, or NULL for the built-in seed */
  int ramping;      /* nonzero: grow precision with the expected accuracy */
} mroot_config;

typedef struct mroot_error_constant {
  double theoretical;
  double empirical;
  double relative_mismatch;
  mroot_estimator estimator;
  int signed_estimate;
  long step;
} mroot_error_constant;

MROOT_API const char* mroot_version(void);
MROOT_API const char* mroot_status_string(mroot_status status);
MROOT_API const char* mroot_last_error(void);
MROOT_API void mroot_string_free(char* text);

/* Defaults: epsilon 10^-target, 64 iterations, 15 guard digits, ramping on. */
MROOT_API void mroot_config_default(mroot_config* config, long target_digits);

/* radicand: "n", "n/d" or an exact decimal. Requires a > 0, m >= 1, p >= 1. */
MROOT_API mroot_status mroot_problem_create(const char* radicand, unsigned long m, unsigned long p,
                                            mroot_problem** out);
MROOT_API void mroot_problem_destroy(mroot_problem* problem);
MROOT_API size_t mroot_problem_term_count(const mroot_problem* problem);
/* c_k as "n/d" and its exponent kM+1. */
MROOT_API mroot_status mroot_problem_coefficient(const mroot_problem* problem, size_t k, char** fraction,
                                                 unsigned long* exponent);
MROOT_API mroot_status mroot_problem_radicand(const mroot_problem* problem, char** fraction);
MROOT_API unsigned long mroot_problem_index(const mroot_problem* problem);
MROOT_API unsigned long mroot_problem_order(const mroot_problem* problem);

/* Exact algebra checks; *holds receives 1 or 0. */
MROOT_API mroot_status mroot_product_identity_check(unsigned long m, unsigned long p, int* holds);
MROOT_API mroot_status mroot_derivative_factor_check(const mroot_problem* problem, int* holds);
MROOT_API mroot_status mroot_template_matches(const mroot_problem* problem, int* holds);
/* log10 of |F(r) - r| and |F^(P+1)(r) - theory| at the given accuracy. */
MROOT_API mroot_status mroot_check_fixed_point(const mroot_problem* problem, long digits, double* log10_residual);
MROOT_API mroot_status mroot_derivative_at_root_check(const mroot_problem* problem, long digits,
                                                      double* log10_error);

/*
 * Runs the iteration. A trace is produced whenever the inputs are valid, even
 * when the status is MROOT_ERR_DIVERGENCE or MROOT_ERR_MAX_ITERATIONS; the
 * caller destroys it in every case where *out is non-NULL.
 */
MROOT_API mroot_status mroot_iterate(const mroot_problem* problem, const mroot_config* config, mroot_trace** out);
MROOT_API mroot_status mroot_newton_iterate(const mroot_problem* problem, const mroot_config* config,
                                            mroot_trace** out);
MROOT_API void mroot_trace_destroy(mroot_trace* trace);

MROOT_API size_t mroot_trace_step_count(const mroot_trace* trace);
/* x_n rounded to `significant` digits. */
MROOT_API mroot_status mroot_trace_step_x(const mroot_trace* trace, size_t n, long significant, char** out);
/* |x_n - x_(n-1)| as d.ddddddddde+EEEE; *out is NULL for the seed step. */
MROOT_API mroot_status mroot_trace_step_delta(const mroot_trace* trace, size_t n, char** out);
MROOT_API mroot_status mroot_trace_step_precision_bits(const mroot_trace* trace, size_t n, long* bits);
MROOT_API int mroot_trace_converged(const mroot_trace* trace);
MROOT_API mroot_termination mroot_trace_termination(const mroot_trace* trace);
MROOT_API int mroot_trace_is_newton(const mroot_trace* trace);
MROOT_API unsigned long mroot_trace_convergence_order(const mroot_trace* trace);
MROOT_API long mroot_trace_target_digits(const mroot_trace* trace);
MROOT_API mroot_status mroot_trace_residual(const mroot_trace* trace, char** out);
/* -HUGE_VAL when the residual is exactly zero. */
MROOT_API double mroot_trace_residual_log10(const mroot_trace* trace);
MROOT_API double mroot_trace_wall_time_ms(const mroot_trace* trace);
/* Final iterate truncated to `decimals` places. */
MROOT_API mroot_status mroot_trace_root(const mroot_trace* trace, long decimals, char** out);
/* The problem a trace was computed for (P = 1 for Newton traces). */
MROOT_API mroot_status mroot_trace_problem(const mroot_trace* trace, mroot_problem** out);

MROOT_API mroot_status mroot_trace_to_json(const mroot_trace* trace, char** out);
MROOT_API mroot_status mroot_trace_from_json(const char* text, mroot_trace** out);
MROOT_API mroot_status mroot_trace_write_file(const mroot_trace* trace, const char* path);
MROOT_API mroot_status mroot_trace_read_file(const char* path, mroot_trace** out);
/* Digits file: "d." plus 80 digits, then 80 digits per line. */
MROOT_API mroot_status mroot_trace_write_digits(const mroot_trace* trace, long decimals, const char* path);

/*
 * Per-step order estimates into `per_step` (up to `capacity`); *count gets
 * the total available. MROOT_ERR_INSUFFICIENT_DATA when fewer than three
 * deltas lie in the asymptotic regime.
 */
MROOT_API mroot_status mroot_estimate_order(const mroot_trace* trace, double* per_step, size_t capacity,
                                            size_t* count, double* final_estimate);
/* reference_digits <= 0 picks four times the trace's working precision. */
MROOT_API mroot_status mroot_error_constant_report(const mroot_trace* trace, long reference_digits,
                                                   mroot_error_constant* report);
MROOT_API mroot_status mroot_error_constant_from_deltas(const mroot_trace* trace, mroot_error_constant* report);

#ifdef __cplusplus
}
#endif

#endif /* MROOT_MROOT_H */
