#pragma once

#include <stdexcept>
#include <string>

namespace exactsdp {

/// Error taxonomy shared by the library and the CLI. The CLI maps kinds to
/// exit codes and structured JSON on stderr; library callers catch by kind.
enum class ErrorKind {
  usage,              // bad arguments, malformed input
  size,               // dimension/shape mismatch in an operation
  field,              // mixed coordinate fields in a point
  degenerate_support, // p = m leaves no kernel columns
  degenerate_cost,    // identically zero cost where an objective is required
  regularity,         // check_regularity failed for some (p, support)
  dimension,          // ideal not zero-dimensional where required
  resource,           // step budget exhausted
  randomness,         // separating-form retries exhausted
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  /// Stable identifier used in JSON error payloads.
  const char* kind_name() const {
    switch (kind_) {
      case ErrorKind::usage: return "usage_error";
      case ErrorKind::size: return "size_error";
      case ErrorKind::field: return "field_error";
      case ErrorKind::degenerate_support: return "degenerate_support_error";
      case ErrorKind::degenerate_cost: return "degenerate_cost_error";
      case ErrorKind::regularity: return "regularity_error";
      case ErrorKind::dimension: return "dimension_error";
      case ErrorKind::resource: return "resource_error";
      case ErrorKind::randomness: return "randomness_error";
    }
    return "error";
  }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

} // namespace exactsdp
