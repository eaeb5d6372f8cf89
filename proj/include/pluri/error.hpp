#pragma once

#include <stdexcept>
#include <string>

namespace pluri {

/// Failure categories surfaced by the library. Every throw site uses one of
/// these so callers (and the CLI) can map failures to exit codes and messages.
enum class ErrorKind {
  dimension_mismatch,  // operands live in different C^n
  domain,              // point outside the domain of validity
  parameter,           // bad numeric parameter (eps, rho, schedule, ...)
  construction,        // invariant violated while building a type
  config,              // malformed experiment configuration
  convergence,         // a limit/verification diagnostic failed
  unsupported,         // asked for a closed form that does not exist
  io,                  // file system trouble
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::parameter: return "parameter error";
    case ErrorKind::construction: return "construction error";
    case ErrorKind::config: return "config error";
    case ErrorKind::convergence: return "convergence error";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::io: return "io error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace pluri
