#pragma once

#include <stdexcept>
#include <string>

namespace aseplab {

enum class ErrorCategory {
  config,
  domain,
  pole,
  quadrature,
  convergence,
  numeric_range,
};

const char* category_name(ErrorCategory c) noexcept;

// Process exit code for an error category: 2 config, 3 numeric, 4 non-convergence.
int exit_code_for(ErrorCategory c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& w) : Error(ErrorCategory::config, w) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& w) : Error(ErrorCategory::domain, w) {}
};

class PoleError : public Error {
 public:
  explicit PoleError(const std::string& w) : Error(ErrorCategory::pole, w) {}
};

class QuadratureError : public Error {
 public:
  explicit QuadratureError(const std::string& w) : Error(ErrorCategory::quadrature, w) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& w) : Error(ErrorCategory::convergence, w) {}
};

class NumericRangeError : public Error {
 public:
  explicit NumericRangeError(const std::string& w) : Error(ErrorCategory::numeric_range, w) {}
};

}  // namespace aseplab
