#pragma once

#include <stdexcept>
#include <string>

namespace arfkit {

enum class ErrorKind {
  configuration,
  domain,
  not_a_unit,
  not_a_numerical_semigroup,
  not_finite_conductor,
  degenerate_branch,
  no_nonzerodivisor,
  truncation_too_small,
  resource_cap,
  internal,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::domain: return "domain";
    case ErrorKind::not_a_unit: return "not-a-unit";
    case ErrorKind::not_a_numerical_semigroup: return "not-a-numerical-semigroup";
    case ErrorKind::not_finite_conductor: return "not-finite-conductor";
    case ErrorKind::degenerate_branch: return "degenerate-branch";
    case ErrorKind::no_nonzerodivisor: return "no-nonzerodivisor";
    case ErrorKind::truncation_too_small: return "truncation-too-small";
    case ErrorKind::resource_cap: return "resource-cap";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
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

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace arfkit
