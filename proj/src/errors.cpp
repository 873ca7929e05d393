#include "attofocus/errors.hpp"

namespace attofocus {

const char* error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid_parameter";
    case ErrorKind::invalid_state: return "invalid_state";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::range: return "range";
    case ErrorKind::regime_violation: return "regime_violation";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config:
    case ErrorKind::invalid_parameter: return 2;
    case ErrorKind::regime_violation: return 4;
    case ErrorKind::numerical:
    case ErrorKind::invalid_state:
    case ErrorKind::range: return 3;
  }
  return 3;
}

}  // namespace attofocus
