#include "aseplab/errors.hpp"

namespace aseplab {

const char* category_name(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::domain: return "domain";
    case ErrorCategory::pole: return "pole";
    case ErrorCategory::quadrature: return "quadrature";
    case ErrorCategory::convergence: return "convergence";
    case ErrorCategory::numeric_range: return "numeric-range";
  }
  return "unknown";
}

int exit_code_for(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::config:
    case ErrorCategory::domain:
      return 2;
    case ErrorCategory::convergence:
      return 4;
    default:
      return 3;
  }
}

}  // namespace aseplab
