#pragma once

#include <stdexcept>
#include <string>

namespace yamabe {

/// Input outside an operation's preconditions. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Spectrum requested for a factor that only carries scalar data.
class UnsupportedSpectrumError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Argument outside the valid energy range of an orbit class.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A numerical result failed its own residual or tolerance check (CLI exit code 3).
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solver setup could not produce a bracket; usually r_max needs raising.
class ConfigurationError : public AccuracyError {
 public:
  using AccuracyError::AccuracyError;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace detail
}  // namespace yamabe
