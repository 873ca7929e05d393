#pragma once

#include <stdexcept>
#include <string>

namespace attofocus {

enum class ErrorKind {
  invalid_parameter,
  invalid_state,
  numerical,
  range,
  regime_violation,
  config,
};

/// Base of every error raised by the library. The kind selects the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what) : Error(ErrorKind::invalid_parameter, what) {}
};

class InvalidState : public Error {
 public:
  explicit InvalidState(const std::string& what) : Error(ErrorKind::invalid_state, what) {}
};

/// Quadrature or time-stepping failed to reach its accuracy target.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::range, what) {}
};

/// Inputs lie outside the perturbative regime in which a result is meaningful.
class RegimeViolation : public Error {
 public:
  explicit RegimeViolation(const std::string& what) : Error(ErrorKind::regime_violation, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

const char* error_kind_name(ErrorKind kind) noexcept;

/// 2 config/usage, 3 numerical, 4 regime violation.
int exit_code(ErrorKind kind) noexcept;

}  // namespace attofocus
