#pragma once

#include <stdexcept>
#include <string>

namespace grouplab {

enum class ErrorKind {
  cap_exceeded,
  invalid_parameter,
  not_normal,
  budget_exceeded,
  degenerate_input,
  parse_error,
  unsupported_backing,
  io_error,
};

/// Library-wide exception. `kind()` carries the error class so the CLI can
/// map failures to row errors and exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::cap_exceeded: return "cap-exceeded";
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::not_normal: return "not-normal";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::degenerate_input: return "degenerate-input";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::unsupported_backing: return "unsupported-backing";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace grouplab
