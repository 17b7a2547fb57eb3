#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mroot/bigfloat.hpp"
#include "mroot/engine.hpp"

namespace mroot {

inline constexpr std::string_view kTraceSchemaVersion = "1";
inline constexpr int kDeltaSignificantDigits = 10;
inline constexpr long kDigitsPerLine = 80;

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "d.ddddddddde+EEEE": ten significant digits, signed exponent of at least
/// four digits. Used for deltas and residuals.
std::string format_delta(const BigFloat& value);
/// Inverse of format_delta; throws TraceFormatError on anything else.
BigFloat parse_delta(std::string_view text);

/// Structured-text (JSON) trace record. Iterates and the seed are written with
/// enough digits to restore them bit for bit; deltas and the residual use
/// format_delta.
std::string serialize_trace(const IterationTrace& trace);
IterationTrace parse_trace(std::string_view text);

void write_trace_file(const IterationTrace& trace, const std::filesystem::path& path);
IterationTrace read_trace_file(const std::filesystem::path& path);

/// Truncated decimal expansion, first line "d." plus 80 digits, then 80
/// digits per line, newline-terminated.
std::string format_digits(const BigFloat& x, long decimals);

}  // namespace mroot
