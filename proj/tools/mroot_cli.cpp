// mroot command-line front end. Talks to the library only through mroot.h.
//
// Exit codes: 0 success, 1 invalid input, 2 divergence guard, 3 iteration
// limit, 4 order estimate off by more than 0.1, 5 too few asymptotic steps.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mroot/mroot.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitMaxIterations = 3;
constexpr int kExitOrderMismatch = 4;
constexpr int kExitInsufficient = 5;
constexpr long kTableDigitsCap = 50;

struct ProblemDeleter {
  void operator()(mroot_problem* p) const { mroot_problem_destroy(p); }
};
struct TraceDeleter {
  void operator()(mroot_trace* t) const { mroot_trace_destroy(t); }
};
using ProblemPtr = std::unique_ptr<mroot_problem, ProblemDeleter>;
using TracePtr = std::unique_ptr<mroot_trace, TraceDeleter>;

// Takes ownership of a library-allocated string.
std::string take(char* text) {
  if (text == nullptr) return {};
  std::string out(text);
  mroot_string_free(text);
  return out;
}

int report_error(mroot_status status) {
  std::cerr << "mroot: " << mroot_status_string(status);
  if (const char* detail = mroot_last_error(); detail != nullptr && *detail != '\0') std::cerr << ": " << detail;
  std::cerr << "\n";
  switch (status) {
    case MROOT_ERR_DIVERGENCE: return kExitDivergence;
    case MROOT_ERR_MAX_ITERATIONS: return kExitMaxIterations;
    case MROOT_ERR_INSUFFICIENT_DATA: return kExitInsufficient;
    default: return kExitInvalid;
  }
}

int exit_for_run(mroot_status status) {
  switch (status) {
    case MROOT_OK: return kExitOk;
    case MROOT_ERR_DIVERGENCE: return kExitDivergence;
    case MROOT_ERR_MAX_ITERATIONS: return kExitMaxIterations;
    default: return kExitInvalid;
  }
}

std::optional<ProblemPtr> make_problem(const std::string& a, unsigned long m, unsigned long p) {
  mroot_problem* raw = nullptr;
  if (mroot_status s = mroot_problem_create(a.c_str(), m, p, &raw); s != MROOT_OK) {
    report_error(s);
    return std::nullopt;
  }
  return ProblemPtr(raw);
}

std::string termination_name(mroot_termination t) {
  switch (t) {
    case MROOT_TERMINATION_EPSILON_MET: return "epsilon_met";
    case MROOT_TERMINATION_MAX_ITERATIONS: return "max_iterations";
    case MROOT_TERMINATION_DIVERGENCE_GUARD: return "divergence_guard";
  }
  return "unknown";
}

// "4/3·x^1 − 1/30·x^4"
std::string render_polynomial(const mroot_problem* problem) {
  std::string out;
  for (size_t k = 0; k < mroot_problem_term_count(problem); ++k) {
    char* fraction = nullptr;
    unsigned long exponent = 0;
    mroot_problem_coefficient(problem, k, &fraction, &exponent);
    std::string c = take(fraction);
    if (c.size() > 2 && c.compare(c.size() - 2, 2, "/1") == 0) c.resize(c.size() - 2);
    const bool negative = !c.empty() && c.front() == '-';
    if (negative) c.erase(0, 1);
    if (k == 0) {
      out += negative ? "−" : "";
    } else {
      out += negative ? " − " : " + ";
    }
    out += c + "·x^" + std::to_string(exponent);
  }
  return out;
}

struct ComputeOptions {
  std::string a;
  unsigned long m = 0;
  unsigned long p = 0;
  long digits = 0;
  std::string x0;
  std::optional<long> epsilon_exp;
  long max_iters = 64;
  long guard_digits = 15;
  std::string trace_path;
  std::string digits_out;
  bool no_ramping = false;
  std::string format = "table";
};

mroot_config make_config(const ComputeOptions& o) {
  mroot_config config;
  mroot_config_default(&config, o.digits);
  if (o.epsilon_exp) config.epsilon_exponent = *o.epsilon_exp;
  config.max_iterations = o.max_iters;
  config.guard_digits = o.guard_digits;
  config.seed = o.x0.empty() ? nullptr : o.x0.c_str();
  config.ramping = o.no_ramping ? 0 : 1;
  return config;
}

void print_table(const mroot_trace* trace, long digits, std::ostream& out) {
  const long shown = std::min(digits, kTableDigitsCap);
  const size_t count = mroot_trace_step_count(trace);
  const int x_width = static_cast<int>(shown) + 4;
  out << std::right << std::setw(4) << "n" << "  " << std::left << std::setw(x_width) << "x_n"
      << std::setw(20) << "|x_n - x_(n-1)|" << "bits\n";
  for (size_t n = 0; n < count; ++n) {
    char* x = nullptr;
    char* delta = nullptr;
    long bits = 0;
    mroot_trace_step_x(trace, n, shown, &x);
    mroot_trace_step_delta(trace, n, &delta);
    mroot_trace_step_precision_bits(trace, n, &bits);
    std::string delta_text = delta == nullptr ? "-" : take(delta);
    out << std::right << std::setw(4) << n << "  " << std::left << std::setw(x_width) << take(x)
        << std::setw(20) << delta_text << bits << "\n";
  }
}

int run_compute(const ComputeOptions& o) {
  auto problem = make_problem(o.a, o.m, o.p);
  if (!problem) return kExitInvalid;
  const mroot_config config = make_config(o);

  mroot_trace* raw = nullptr;
  const mroot_status status = mroot_iterate(problem->get(), &config, &raw);
  if (raw == nullptr) return report_error(status);
  TracePtr trace(raw);

  if (!o.trace_path.empty()) {
    if (mroot_status s = mroot_trace_write_file(trace.get(), o.trace_path.c_str()); s != MROOT_OK) {
      return report_error(s);
    }
  }
  if (!o.digits_out.empty() && status == MROOT_OK) {
    if (mroot_status s = mroot_trace_write_digits(trace.get(), o.digits, o.digits_out.c_str()); s != MROOT_OK) {
      return report_error(s);
    }
  }

  if (o.format == "json") {
    char* text = nullptr;
    if (mroot_status s = mroot_trace_to_json(trace.get(), &text); s != MROOT_OK) return report_error(s);
    std::cout << take(text);
    return exit_for_run(status);
  }

  char* radicand = nullptr;
  mroot_problem_radicand(problem->get(), &radicand);
  std::cout << "a = " << take(radicand) << ", M = " << o.m << ", P = " << o.p << " (order " << o.p + 1
            << "), target " << o.digits << " digits, epsilon 1e-" << config.epsilon_exponent << "\n";
  print_table(trace.get(), o.digits, std::cout);

  const size_t steps = mroot_trace_step_count(trace.get());
  std::cout << (mroot_trace_converged(trace.get()) ? "converged" : "not converged") << " after "
            << steps - 1 << " iterations (" << termination_name(mroot_trace_termination(trace.get())) << ")\n";
  char* residual = nullptr;
  mroot_trace_residual(trace.get(), &residual);
  std::cout << "residual |x^M - a| = " << take(residual) << "\n";
  std::cout << std::fixed << std::setprecision(3) << "wall time " << mroot_trace_wall_time_ms(trace.get())
            << " ms\n";

  if (status == MROOT_OK) {
    if (!o.digits_out.empty()) {
      std::cout << "root digits written to " << o.digits_out << "\n";
    } else {
      char* root = nullptr;
      mroot_trace_root(trace.get(), o.digits, &root);
      std::cout << "root = " << take(root) << "\n";
    }
  } else {
    report_error(status);
  }
  return exit_for_run(status);
}

int run_coeffs(const std::string& a, unsigned long m, unsigned long p, const std::string& format) {
  auto problem = make_problem(a, m, p);
  if (!problem) return kExitInvalid;
  const size_t terms = mroot_problem_term_count(problem->get());

  if (format == "json") {
    nlohmann::json out;
    char* radicand = nullptr;
    mroot_problem_radicand(problem->get(), &radicand);
    out["a"] = take(radicand);
    out["M"] = m;
    out["P"] = p;
    out["coefficients"] = nlohmann::json::array();
    for (size_t k = 0; k < terms; ++k) {
      char* fraction = nullptr;
      unsigned long exponent = 0;
      mroot_problem_coefficient(problem->get(), k, &fraction, &exponent);
      out["coefficients"].push_back({{"k", k}, {"exponent", exponent}, {"c", take(fraction)}});
    }
    out["polynomial"] = render_polynomial(problem->get());
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }

  std::cout << render_polynomial(problem->get()) << "\n";
  std::cout << std::left << std::setw(4) << "k" << std::setw(10) << "exponent" << "c_k\n";
  for (size_t k = 0; k < terms; ++k) {
    char* fraction = nullptr;
    unsigned long exponent = 0;
    mroot_problem_coefficient(problem->get(), k, &fraction, &exponent);
    std::cout << std::left << std::setw(4) << k << std::setw(10) << exponent << take(fraction) << "\n";
  }
  return kExitOk;
}

struct AnalyzeOptions {
  std::string trace_path;
  ComputeOptions recompute;
  std::string estimator = "reference";
  long reference_digits = 0;
};

int run_analyze(const AnalyzeOptions& o, bool have_a, bool have_m, bool have_p) {
  TracePtr trace;
  if (!o.trace_path.empty()) {
    mroot_trace* raw = nullptr;
    if (mroot_status s = mroot_trace_read_file(o.trace_path.c_str(), &raw); s != MROOT_OK) {
      report_error(s);
      return kExitInvalid;
    }
    trace.reset(raw);
    mroot_problem* from_trace = nullptr;
    if (mroot_status s = mroot_trace_problem(trace.get(), &from_trace); s != MROOT_OK) return report_error(s);
    ProblemPtr recorded(from_trace);
    if (have_a || have_m || have_p) {
      char* recorded_a = nullptr;
      mroot_problem_radicand(recorded.get(), &recorded_a);
      const std::string trace_a = take(recorded_a);
      bool mismatch = have_m && o.recompute.m != mroot_problem_index(recorded.get());
      mismatch |= have_p && !mroot_trace_is_newton(trace.get()) && o.recompute.p != mroot_problem_order(recorded.get());
      if (have_a) {
        auto flagged = make_problem(o.recompute.a, 1, 1);
        if (!flagged) return kExitInvalid;
        char* flagged_a = nullptr;
        mroot_problem_radicand(flagged->get(), &flagged_a);
        mismatch |= take(flagged_a) != trace_a;
      }
      if (mismatch) {
        std::cerr << "mroot: --a/--m/--p disagree with the trace file\n";
        return kExitInvalid;
      }
    }
  } else {
    if (!have_a || !have_m || !have_p || o.recompute.digits <= 0) {
      std::cerr << "mroot: analyze needs --trace or --a, --m, --p and --digits\n";
      return kExitInvalid;
    }
    auto problem = make_problem(o.recompute.a, o.recompute.m, o.recompute.p);
    if (!problem) return kExitInvalid;
    const mroot_config config = make_config(o.recompute);
    mroot_trace* raw = nullptr;
    mroot_status status = mroot_iterate(problem->get(), &config, &raw);
    if (raw == nullptr) return report_error(status);
    trace.reset(raw);
  }

  const unsigned long theoretical = mroot_trace_convergence_order(trace.get());
  std::vector<double> per_step(mroot_trace_step_count(trace.get()));
  size_t count = 0;
  double final_estimate = 0.0;
  if (mroot_status s = mroot_estimate_order(trace.get(), per_step.data(), per_step.size(), &count, &final_estimate);
      s != MROOT_OK) {
    return report_error(s);
  }
  std::cout << std::fixed << std::setprecision(4) << "order estimates:";
  for (size_t i = 0; i < count && i < per_step.size(); ++i) std::cout << " " << per_step[i];
  std::cout << "\nfinal order estimate: " << final_estimate << " (theoretical " << theoretical << ")\n";

  if (!mroot_trace_is_newton(trace.get())) {
    mroot_error_constant report{};
    const mroot_status s = o.estimator == "deltas"
                               ? mroot_error_constant_from_deltas(trace.get(), &report)
                               : mroot_error_constant_report(trace.get(), o.reference_digits, &report);
    if (s == MROOT_OK) {
      std::cout << std::setprecision(7) << "error constant ("
                << (report.estimator == MROOT_ESTIMATOR_REFERENCE_ROOT ? "reference_root" : "successive_differences")
                << ", step " << report.step << "): empirical " << report.empirical << ", theoretical "
                << report.theoretical << (report.signed_estimate ? "" : " (magnitudes)") << std::scientific
                << std::setprecision(3) << ", relative mismatch " << report.relative_mismatch << "\n";
    } else if (s == MROOT_ERR_INSUFFICIENT_DATA) {
      std::cout << "error constant: insufficient asymptotic steps\n";
    } else {
      return report_error(s);
    }
  }
  return std::fabs(final_estimate - static_cast<double>(theoretical)) <= 0.1 ? kExitOk : kExitOrderMismatch;
}

struct BenchOptions {
  std::string a;
  unsigned long m = 0;
  long digits = 0;
  std::string p_list;
  bool newton = false;
  int repeat = 1;
};

std::optional<std::vector<unsigned long>> parse_p_list(const std::string& text) {
  std::vector<unsigned long> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    const unsigned long p = std::stoul(item);
    if (p < 1) return std::nullopt;
    values.push_back(p);
  }
  if (values.empty()) return std::nullopt;
  return values;
}

int run_bench(const BenchOptions& o) {
  auto ps = parse_p_list(o.p_list);
  if (!ps) {
    std::cerr << "mroot: --p-list must be a non-empty comma-separated list of positive integers\n";
    return kExitInvalid;
  }
  if (o.repeat < 1 || o.digits < 1) {
    std::cerr << "mroot: --digits and --repeat must be positive\n";
    return kExitInvalid;
  }
  struct Row {
    std::string method;
    unsigned long p;
  };
  std::vector<Row> rows;
  if (o.newton) rows.push_back({"newton", 0});
  for (unsigned long p : *ps) rows.push_back({"fixed_point", p});

  std::cout << std::left << std::setw(13) << "method" << std::right << std::setw(4) << "P" << std::setw(7)
            << "order" << std::setw(12) << "iterations" << std::setw(15) << "wall_time_ms" << std::setw(14)
            << "residual_exp" << "\n";
  int exit_code = kExitOk;
  for (const Row& row : rows) {
    auto problem = make_problem(o.a, o.m, row.p == 0 ? 1 : row.p);
    if (!problem) return kExitInvalid;
    mroot_config config;
    mroot_config_default(&config, o.digits);

    double best_ms = std::numeric_limits<double>::infinity();
    TracePtr trace;
    mroot_status status = MROOT_OK;
    for (int r = 0; r < o.repeat; ++r) {
      mroot_trace* raw = nullptr;
      status = row.p == 0 ? mroot_newton_iterate(problem->get(), &config, &raw)
                          : mroot_iterate(problem->get(), &config, &raw);
      if (raw == nullptr) return report_error(status);
      trace.reset(raw);
      best_ms = std::min(best_ms, mroot_trace_wall_time_ms(raw));
    }
    if (status != MROOT_OK && exit_code == kExitOk) exit_code = exit_for_run(status);

    const double residual = mroot_trace_residual_log10(trace.get());
    std::string residual_exp = std::isinf(residual) ? "-inf" : std::to_string(static_cast<long>(std::floor(residual)));
    std::cout << std::left << std::setw(13) << row.method << std::right << std::setw(4)
              << (row.p == 0 ? std::string("-") : std::to_string(row.p)) << std::setw(7)
              << mroot_trace_convergence_order(trace.get()) << std::setw(12)
              << mroot_trace_step_count(trace.get()) - 1 << std::setw(15) << std::fixed << std::setprecision(3)
              << best_ms << std::setw(14) << residual_exp << "\n";
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arbitrary-precision M-th roots by a fixed-point polynomial iteration of order P+1"};
  app.require_subcommand(1);

  ComputeOptions compute;
  auto* compute_cmd = app.add_subcommand("compute", "Compute a^(1/M) and print the iteration table");
  compute_cmd->add_option("--a", compute.a, "Radicand: n, n/d or exact decimal")->required();
  compute_cmd->add_option("--m", compute.m, "Root index M >= 1")->required();
  compute_cmd->add_option("--p", compute.p, "Order parameter P >= 1 (order P+1)")->required();
  compute_cmd->add_option("--digits", compute.digits, "Target decimal digits")->required();
  compute_cmd->add_option("--x0", compute.x0, "Seed (decimal); default exp(ln(a)/M)");
  compute_cmd->add_option("--epsilon-exp", compute.epsilon_exp, "Stop when |x_n - x_(n-1)| < 10^-E");
  compute_cmd->add_option("--max-iters", compute.max_iters, "Iteration limit");
  compute_cmd->add_option("--guard-digits", compute.guard_digits, "Extra working digits");
  compute_cmd->add_option("--trace", compute.trace_path, "Write the trace record to this file");
  compute_cmd->add_option("--digits-out", compute.digits_out, "Write the root digits to this file");
  compute_cmd->add_flag("--no-ramping", compute.no_ramping, "Use full precision from the first step");
  compute_cmd->add_option("--format", compute.format, "Output format")->check(CLI::IsMember({"table", "json"}));

  std::string coeffs_a;
  unsigned long coeffs_m = 0;
  unsigned long coeffs_p = 0;
  std::string coeffs_format = "human";
  auto* coeffs_cmd = app.add_subcommand("coeffs", "Print the exact coefficients c_k of F");
  coeffs_cmd->add_option("--a", coeffs_a, "Radicand")->required();
  coeffs_cmd->add_option("--m", coeffs_m, "Root index M")->required();
  coeffs_cmd->add_option("--p", coeffs_p, "Order parameter P")->required();
  coeffs_cmd->add_option("--format", coeffs_format, "Output format")->check(CLI::IsMember({"human", "json"}));

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Estimate the convergence order and error constant");
  analyze_cmd->add_option("--trace", analyze.trace_path, "Trace record written by compute --trace");
  auto* an_a = analyze_cmd->add_option("--a", analyze.recompute.a, "Radicand");
  auto* an_m = analyze_cmd->add_option("--m", analyze.recompute.m, "Root index M");
  auto* an_p = analyze_cmd->add_option("--p", analyze.recompute.p, "Order parameter P");
  analyze_cmd->add_option("--digits", analyze.recompute.digits, "Target digits when recomputing");
  analyze_cmd->add_option("--x0", analyze.recompute.x0, "Seed when recomputing");
  analyze_cmd->add_flag("--no-ramping", analyze.recompute.no_ramping, "Recompute at full precision");
  analyze_cmd->add_option("--estimator", analyze.estimator, "Error estimator")
      ->check(CLI::IsMember({"reference", "deltas"}));
  analyze_cmd->add_option("--reference-digits", analyze.reference_digits,
                          "Reference root accuracy (default 4x working precision)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare iteration counts and timings");
  bench_cmd->add_option("--a", bench.a, "Radicand")->required();
  bench_cmd->add_option("--m", bench.m, "Root index M")->required();
  bench_cmd->add_option("--digits", bench.digits, "Target digits")->required();
  bench_cmd->add_option("--p-list", bench.p_list, "Comma-separated P values")->required();
  bench_cmd->add_flag("--newton", bench.newton, "Include the Newton baseline");
  bench_cmd->add_option("--repeat", bench.repeat, "Runs per configuration; best time reported");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (compute_cmd->parsed()) return run_compute(compute);
  if (coeffs_cmd->parsed()) return run_coeffs(coeffs_a, coeffs_m, coeffs_p, coeffs_format);
  if (analyze_cmd->parsed()) return run_analyze(analyze, an_a->count() > 0, an_m->count() > 0, an_p->count() > 0);
  if (bench_cmd->parsed()) return run_bench(bench);
  return kExitInvalid;
}
