#pragma once

#include <stdexcept>
#include <string>

namespace shoberry {

/// Failure categories. Each maps onto a CLI exit code.
enum class ErrorKind {
  Validation,   // malformed input or a violated invariant (exit 2)
  Undefined,    // the requested quantity does not exist: resonance, incommensurability, non-cyclic (exit 3)
  Convergence,  // a numerical procedure failed to meet its tolerance (exit 4)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  int exit_code() const noexcept {
    switch (kind_) {
      case ErrorKind::Validation: return 2;
      case ErrorKind::Undefined: return 3;
      case ErrorKind::Convergence: return 4;
    }
    return 1;
  }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class UndefinedPhaseError : public Error {
 public:
  explicit UndefinedPhaseError(const std::string& what) : Error(ErrorKind::Undefined, what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(ErrorKind::Convergence, what) {}
};

}  // namespace shoberry
