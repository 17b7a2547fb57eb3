#include "mroot/trace_file.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace mroot {

namespace {

using nlohmann::json;

const std::regex& delta_pattern() {
  static const std::regex pattern(R"(^-?[0-9]\.[0-9]{9}e[+-][0-9]{4,}$)");
  return pattern;
}

template <typename T>
T required(const json& object, const char* key) {
  if (!object.is_object() || !object.contains(key)) {
    throw TraceFormatError(std::string("missing field '") + key + "'");
  }
  try {
    return object.at(key).get<T>();
  } catch (const json::exception& e) {
    throw TraceFormatError(std::string("bad field '") + key + "': " + e.what());
  }
}

BigFloat parse_number(const std::string& text, long bits, const char* what) {
  try {
    return BigFloat::parse(text, Precision(bits));
  } catch (const std::invalid_argument&) {
    throw TraceFormatError(std::string("bad ") + what + " '" + text + "'");
  }
}

}  // namespace

std::string format_delta(const BigFloat& value) {
  return value.to_scientific(kDeltaSignificantDigits, 4);
}

BigFloat parse_delta(std::string_view text) {
  std::string s(text);
  if (!std::regex_match(s, delta_pattern())) {
    throw TraceFormatError("delta not in d.ddddddddde+EEEE form: '" + s + "'");
  }
  return BigFloat::parse(s, Precision(Precision::kMinBits));
}

std::string serialize_trace(const IterationTrace& trace) {
  json steps = json::array();
  for (const auto& step : trace.steps) {
    steps.push_back({{"n", step.n},
                     {"x", step.x.to_exact_string()},
                     {"delta", step.delta ? json(format_delta(*step.delta)) : json(nullptr)},
                     {"precision_bits", step.precision_bits}});
  }
  const BigFloat& seed = trace.config.seed ? *trace.config.seed : trace.steps.front().x;
  json record = {
      {"schema_version", kTraceSchemaVersion},
      {"method", to_string(trace.method)},
      {"problem", {{"a", trace.problem.radicand().to_fraction_string()}, {"M", trace.problem.index()}}},
      {"P", trace.order ? json(trace.order->value()) : json(nullptr)},
      {"config",
       {{"target_digits", trace.config.target_digits},
        {"epsilon_exponent", trace.config.epsilon_exponent},
        {"max_iterations", trace.config.max_iterations},
        {"guard_digits", trace.config.guard_digits},
        {"seed", seed.to_exact_string()},
        {"seed_precision_bits", seed.precision().bits()},
        {"seed_digits", trace.config.seed_digits ? json(*trace.config.seed_digits) : json(nullptr)},
        {"ramping", trace.config.ramping}}},
      {"steps", std::move(steps)},
      {"converged", trace.converged},
      {"termination_reason", to_string(trace.termination_reason)},
      {"residual", format_delta(trace.residual)},
      {"wall_time_ms", trace.wall_time_ms}};
  return record.dump(2) + "\n";
}

IterationTrace parse_trace(std::string_view text) {
  json record;
  try {
    record = json::parse(text);
  } catch (const json::parse_error& e) {
    throw TraceFormatError(std::string("trace is not valid JSON: ") + e.what());
  }
  if (required<std::string>(record, "schema_version") != kTraceSchemaVersion) {
    throw TraceFormatError("unsupported schema_version");
  }

  try {
    const json& problem_json = record.at("problem");
    RootProblem problem(Rational::parse(required<std::string>(problem_json, "a")),
                        required<unsigned long>(problem_json, "M"));
    std::optional<OrderParameter> order;
    if (record.contains("P") && !record.at("P").is_null()) order = OrderParameter(required<unsigned long>(record, "P"));
    const Method method = record.contains("method") ? parse_method(required<std::string>(record, "method"))
                                                    : Method::fixed_point;
    if (method == Method::fixed_point && !order) throw TraceFormatError("fixed-point trace without P");

    const json& config_json = record.at("config");
    IterationConfig config;
    config.target_digits = required<long>(config_json, "target_digits");
    config.epsilon_exponent = required<long>(config_json, "epsilon_exponent");
    config.max_iterations = required<long>(config_json, "max_iterations");
    config.guard_digits = required<long>(config_json, "guard_digits");
    config.ramping = config_json.contains("ramping") ? required<bool>(config_json, "ramping") : true;
    const long seed_bits = config_json.contains("seed_precision_bits")
                               ? required<long>(config_json, "seed_precision_bits")
                               : Precision::from_digits(IterationConfig::kInitialDigits).bits();
    if (config_json.contains("seed_digits") && !config_json.at("seed_digits").is_null()) {
      config.seed_digits = required<long>(config_json, "seed_digits");
    }
    config.seed = parse_number(required<std::string>(config_json, "seed"), seed_bits, "seed");
    config.validate();

    IterationTrace trace{.method = method,
                         .problem = problem,
                         .order = order,
                         .config = config,
                         .steps = {},
                         .converged = required<bool>(record, "converged"),
                         .termination_reason =
                             parse_termination_reason(required<std::string>(record, "termination_reason")),
                         .residual = parse_delta(required<std::string>(record, "residual")),
                         .wall_time_ms = required<double>(record, "wall_time_ms")};

    const json& steps = record.at("steps");
    if (!steps.is_array() || steps.empty()) throw TraceFormatError("steps must be a non-empty array");
    for (const auto& step_json : steps) {
      IterationStep step;
      step.n = required<long>(step_json, "n");
      if (step.n != static_cast<long>(trace.steps.size())) {
        throw TraceFormatError("step indices must be consecutive from 0");
      }
      step.precision_bits = required<long>(step_json, "precision_bits");
      if (step.precision_bits < Precision::kMinBits) throw TraceFormatError("precision_bits below 64");
      step.x = parse_number(required<std::string>(step_json, "x"), step.precision_bits, "x");
      if (step_json.contains("delta") && !step_json.at("delta").is_null()) {
        step.delta = parse_delta(required<std::string>(step_json, "delta"));
      } else if (step.n > 0) {
        throw TraceFormatError("step " + std::to_string(step.n) + " has no delta");
      }
      trace.steps.push_back(std::move(step));
    }
    return trace;
  } catch (const TraceFormatError&) {
    throw;
  } catch (const json::exception& e) {
    throw TraceFormatError(std::string("malformed trace: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw TraceFormatError(std::string("malformed trace: ") + e.what());
  } catch (const std::domain_error& e) {
    throw TraceFormatError(std::string("malformed trace: ") + e.what());
  }
}

void write_trace_file(const IterationTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << serialize_trace(trace);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

IterationTrace read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trace(buffer.str());
}

std::string format_digits(const BigFloat& x, long decimals) {
  const std::string fixed = x.to_fixed_truncated(decimals);
  const auto dot = fixed.find('.');
  if (dot == std::string::npos) return fixed + "\n";
  std::string out = fixed.substr(0, dot + 1);
  const std::string fraction = fixed.substr(dot + 1);
  for (std::size_t i = 0; i < fraction.size(); i += kDigitsPerLine) {
    if (i > 0) out += "\n";
    out += fraction.substr(i, kDigitsPerLine);
  }
  return out + "\n";
}

}  // namespace mroot
