// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Drives the library through its C interface only.

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mroot/mroot.h"

namespace {

struct Case {
  const char* a;
  unsigned long m;
  unsigned long p;
};

const Case kGrid[] = {{"10", 3, 1}, {"2", 2, 3}, {"5", 4, 2}, {"7/3", 2, 4}};

class Problem {
 public:
  Problem(const char* a, unsigned long m, unsigned long p) {
    if (mroot_problem_create(a, m, p, &handle_) != MROOT_OK) throw std::runtime_error(mroot_last_error());
  }
  ~Problem() { mroot_problem_destroy(handle_); }
  Problem(const Problem&) = delete;
  Problem& operator=(const Problem&) = delete;
  const mroot_problem* get() const { return handle_; }

 private:
  mroot_problem* handle_ = nullptr;
};

class Trace {
 public:
  Trace() = default;
  ~Trace() { mroot_trace_destroy(handle_); }
  Trace(const Trace&) = delete;
  Trace& operator=(const Trace&) = delete;
  mroot_trace** out() { return &handle_; }
  const mroot_trace* get() const { return handle_; }

 private:
  mroot_trace* handle_ = nullptr;
};

std::string take(char* text) {
  if (text == nullptr) return {};
  std::string s(text);
  mroot_string_free(text);
  return s;
}

mroot_config config_for(long digits, const char* seed = nullptr, bool ramping = true) {
  mroot_config config;
  mroot_config_default(&config, digits);
  config.seed = seed;
  config.ramping = ramping ? 1 : 0;
  return config;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string step_x(const Trace& t, size_t n, long significant) {
  char* text = nullptr;
  mroot_trace_step_x(t.get(), n, significant, &text);
  return take(text);
}

std::string step_delta(const Trace& t, size_t n) {
  char* text = nullptr;
  mroot_trace_step_delta(t.get(), n, &text);
  return take(text);
}

// Splits "d.ddde-EEEE" into mantissa and exponent.
std::pair<double, long> split_scientific(const std::string& text) {
  const auto e = text.find('e');
  return {std::stod(text.substr(0, e)), std::stol(text.substr(e + 1))};
}

double log10_of(const std::string& scientific) {
  auto [mantissa, exponent] = split_scientific(scientific);
  return std::log10(mantissa) + static_cast<double>(exponent);
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
};

Outcome example_one() {
  Outcome o;
  const char* published_x[] = {
      "2.133333333333333333333333333333333333333", "2.154024032921810699588477366255144032922",
      "2.154434533500953092649669501763572523986", "2.154434690031860976181374509716973801410",
      "2.154434690031883721759293566039074794849", "2.154434690031883721759293566519350495259"};
  // Printed differences rounded to ten significant digits.
  const char* published_delta[] = {"1.333333333e-0001", "2.069069959e-0002", "4.105005791e-0004",
                               "1.565309079e-0007", "2.274557792e-0014", "4.802757004e-0028"};
  const auto start = std::chrono::steady_clock::now();
  Problem problem("10", 3, 1);
  const mroot_config config = config_for(40, "2");
  Trace t;
  const mroot_status status = mroot_iterate(problem.get(), &config, t.out());
  const double ms = elapsed_ms(start);
  o.require(status == MROOT_OK, "run did not converge");
  o.require(mroot_trace_step_count(t.get()) >= 7, "fewer than six iterations");
  if (!o.pass) return o;
  int x_matches = 0;
  int delta_matches = 0;
  for (size_t n = 1; n <= 6; ++n) {
    x_matches += step_x(t, n, 40) == published_x[n - 1];
    delta_matches += step_delta(t, n) == published_delta[n - 1];
  }
  o.require(x_matches == 6, std::to_string(x_matches) + "/6 x_n match");
  o.require(delta_matches == 6, std::to_string(delta_matches) + "/6 deltas match");
  o.require(ms < 1000.0, "runtime " + std::to_string(ms) + " ms");
  o.detail << (o.pass ? "6/6 x_n at 40 digits, 6/6 deltas at 10 digits, " : "; ") << ms << " ms";
  return o;
}

Outcome example_two() {
  Outcome o;
  // Magnitudes from the worked table: mantissa to three digits and exponent.
  const std::pair<double, long> published[] = {{4.88, -17},   {8.77, -66},   {9.16, -261},
                                           {1.09, -1040}, {2.19, -4160}, {3.58, -16639}};
  {
    Problem problem("2", 2, 3);
    // The table's differences correspond to x_0 = 1.414213562373095.
    const mroot_config config = config_for(20000, "1.414213562373095", false);
    Trace t;
    const mroot_status status = mroot_iterate(problem.get(), &config, t.out());
    o.require(status == MROOT_OK, "20000-digit run did not converge");
    int matches = 0;
    for (size_t n = 1; n <= 6 && n < mroot_trace_step_count(t.get()); ++n) {
      auto [mantissa, exponent] = split_scientific(step_delta(t, n));
      const double rounded = std::round(mantissa * 100.0) / 100.0;
      matches += std::fabs(rounded - published[n - 1].first) < 1e-9 && exponent == published[n - 1].second;
    }
    o.require(matches == 6, std::to_string(matches) + "/6 deltas match");
    if (o.pass) o.detail << "6/6 deltas at 20000 digits from x_0 = 1.414213562373095";
  }
  {
    Problem problem("2", 2, 3);
    const mroot_config config = config_for(100000);
    Trace t;
    const auto start = std::chrono::steady_clock::now();
    const mroot_status status = mroot_iterate(problem.get(), &config, t.out());
    const double ms = elapsed_ms(start);
    const double residual = mroot_trace_residual_log10(t.get());
    o.require(status == MROOT_OK, "100000-digit run did not converge");
    o.require(ms < 60000.0, "100000 digits took " + std::to_string(ms) + " ms");
    o.require(residual < -99990.0, "residual 1e" + std::to_string(residual));
    o.detail << "; 100000 digits in " << ms << " ms, log10|x^2-2| = " << residual;
  }
  return o;
}

Outcome order_estimates() {
  Outcome o;
  for (const Case& c : kGrid) {
    Problem problem(c.a, c.m, c.p);
    const mroot_config config = config_for(1000);
    Trace t;
    double estimate = 0.0;
    size_t count = 0;
    const bool ok = mroot_iterate(problem.get(), &config, t.out()) == MROOT_OK &&
                    mroot_estimate_order(t.get(), nullptr, 0, &count, &estimate) == MROOT_OK;
    const double expected = static_cast<double>(c.p + 1);
    o.require(ok && std::fabs(estimate - expected) <= 0.1,
              std::string("(") + c.a + "," + std::to_string(c.m) + "," + std::to_string(c.p) + ") gave " +
                  std::to_string(estimate));
    o.detail << (o.detail.tellp() > 0 ? ", " : "") << c.a << "/" << c.m << "/" << c.p << ": " << estimate;
  }
  return o;
}

Outcome error_constants() {
  Outcome o;
  const double theory1 = 2.0 / std::cbrt(10.0);
  const double theory2 = 105.0 / (24.0 * std::pow(2.0, 1.5));
  auto check_run = [&](const char* a, unsigned long m, unsigned long p, long digits, const char* seed, bool ramping,
                       double theory, const char* label) {
    Problem problem(a, m, p);
    const mroot_config config = config_for(digits, seed, ramping);
    Trace t;
    mroot_error_constant report{};
    const bool ok = mroot_iterate(problem.get(), &config, t.out()) == MROOT_OK &&
                    mroot_error_constant_report(t.get(), 0, &report) == MROOT_OK;
    o.require(ok && report.relative_mismatch < 0.01, std::string(label) + " mismatch " +
                                                         std::to_string(report.relative_mismatch));
    o.require(std::fabs(std::fabs(report.theoretical) - theory) < 1e-9 * theory,
              std::string(label) + " theoretical value");
    o.detail << (o.detail.tellp() > 0 ? ", " : "") << label << " " << report.empirical << " vs "
             << report.theoretical << " (mismatch " << report.relative_mismatch << ")";
  };
  check_run("10", 3, 1, 40, "2", true, theory1, "example 1");
  check_run("2", 2, 3, 20000, "1.414213562373095", false, theory2, "example 2");

  // Ratios read off the printed differences: |d_(n+1)| / |d_n|^(P+1).
  const double ratio1 = std::pow(10.0, log10_of("4.802757004e-28") - 2.0 * log10_of("2.274557792e-14"));
  const double ratio2 = std::pow(10.0, log10_of("9.164798638e-261") - 4.0 * log10_of("8.773491626e-66"));
  o.require(std::fabs(ratio1 / theory1 - 1.0) < 0.01, "printed example 1 ratio " + std::to_string(ratio1));
  o.require(std::fabs(ratio2 / theory2 - 1.0) < 0.01, "printed example 2 ratio " + std::to_string(ratio2));
  o.detail << ", printed-table ratios " << ratio1 << " and " << ratio2;
  return o;
}

Outcome exact_identities() {
  Outcome o;
  int identities = 0;
  int factorisations = 0;
  int templates = 0;
  for (unsigned long m = 1; m <= 10; ++m) {
    for (unsigned long p = 1; p <= 10; ++p) {
      int holds = 0;
      if (mroot_product_identity_check(m, p, &holds) == MROOT_OK && holds) ++identities;
    }
  }
  for (const char* a : {"1/2", "2", "10", "7/3"}) {
    for (unsigned long m = 1; m <= 5; ++m) {
      for (unsigned long p = 1; p <= 5; ++p) {
        Problem problem(a, m, p);
        int holds = 0;
        if (mroot_derivative_factor_check(problem.get(), &holds) == MROOT_OK && holds) ++factorisations;
        if (p <= 4 && mroot_template_matches(problem.get(), &holds) == MROOT_OK && holds) ++templates;
      }
    }
  }
  o.require(identities == 100, std::to_string(identities) + "/100 product identities");
  o.require(factorisations == 100, std::to_string(factorisations) + "/100 derivative factorisations");
  o.require(templates == 80, std::to_string(templates) + "/80 template matches");
  if (o.pass) o.detail << "100/100 product identities, 100/100 factorisations, 80/80 templates";
  return o;
}

Outcome fixed_point_and_derivative() {
  Outcome o;
  const long digits = 100;
  double worst_fixed = -INFINITY;
  double worst_derivative = -INFINITY;
  for (const Case& c : kGrid) {
    Problem problem(c.a, c.m, c.p);
    double fixed = 0.0;
    double derivative = 0.0;
    const bool ok = mroot_check_fixed_point(problem.get(), digits, &fixed) == MROOT_OK &&
                    mroot_derivative_at_root_check(problem.get(), digits, &derivative) == MROOT_OK;
    o.require(ok, std::string("check failed for a=") + c.a);
    worst_fixed = std::max(worst_fixed, fixed);
    worst_derivative = std::max(worst_derivative, derivative);
  }
  o.require(worst_fixed < -(digits - 5), "fixed-point residual 1e" + std::to_string(worst_fixed));
  o.require(worst_derivative < -(digits - 10), "derivative error 1e" + std::to_string(worst_derivative));
  o.detail << (o.detail.tellp() > 0 ? "; " : "") << "worst log10 |F(r)-r| = " << worst_fixed
           << ", worst log10 derivative error = " << worst_derivative;
  return o;
}

Outcome newton_parity() {
  Outcome o;
  Problem problem("2", 2, 1);
  const mroot_config config = config_for(10000);
  Trace fixed_point;
  Trace newton;
  const bool ok = mroot_iterate(problem.get(), &config, fixed_point.out()) == MROOT_OK &&
                  mroot_newton_iterate(problem.get(), &config, newton.out()) == MROOT_OK;
  o.require(ok, "a run did not converge");
  const long fp_iters = static_cast<long>(mroot_trace_step_count(fixed_point.get())) - 1;
  const long newton_iters = static_cast<long>(mroot_trace_step_count(newton.get())) - 1;
  o.require(std::labs(fp_iters - newton_iters) <= 1,
            "iterations " + std::to_string(fp_iters) + " vs " + std::to_string(newton_iters));
  o.detail << (o.detail.tellp() > 0 ? "; " : "") << "P=1 " << fp_iters << " iterations, Newton " << newton_iters;
  return o;
}

// Digits of the final iterate scaled to an integer in units of 10^-decimals.
mpz_class scaled_root(const Trace& t, long decimals) {
  char* text = nullptr;
  mroot_trace_root(t.get(), decimals, &text);
  std::string s = take(text);
  s.erase(s.find('.'), 1);
  return mpz_class(s, 10);
}

Outcome ramping_soundness() {
  Outcome o;
  constexpr long kExtra = 10;
  for (long digits : {100L, 1000L, 10000L}) {
    Problem problem("2", 2, 3);
    const mroot_config ramped_config = config_for(digits);
    const mroot_config flat_config = config_for(digits, nullptr, false);
    Trace ramped;
    Trace flat;
    const bool ok = mroot_iterate(problem.get(), &ramped_config, ramped.out()) == MROOT_OK &&
                    mroot_iterate(problem.get(), &flat_config, flat.out()) == MROOT_OK;
    o.require(ok, "run at " + std::to_string(digits) + " digits did not converge");
    if (!ok) continue;
    mpz_class difference = scaled_root(ramped, digits + kExtra) - scaled_root(flat, digits + kExtra);
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), 10, kExtra);
    o.require(abs(difference) < bound, "outputs differ at " + std::to_string(digits) + " digits");
  }
  if (o.pass) o.detail << "ramped and full-precision roots agree to 10^-T for T = 100, 1000, 10000";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 example 1 reproduction", example_one},
      {"2 example 2 deltas and 100000-digit sqrt(2)", example_two},
      {"3 order estimation", order_estimates},
      {"4 asymptotic error constant", error_constants},
      {"5 exact identities", exact_identities},
      {"6 fixed point and top derivative", fixed_point_and_derivative},
      {"7 newton parity", newton_parity},
      {"8 precision ramping soundness", ramping_soundness},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail << "exception: " << e.what();
    }
    failures += !outcome.pass;
    std::printf("%s criterion %s: %s\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.str().c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
