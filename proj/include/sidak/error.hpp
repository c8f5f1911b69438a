#pragma once

#include <stdexcept>
#include <string>

namespace sidak {

// Error categories line up with the CLI exit codes and the C API status codes.
enum class ErrorKind {
  input = 2,      // malformed or unreadable data
  parameter = 3,  // constraint violation on (m, n, r, s, alpha, ...)
  budget = 4,     // work budget exceeded or numerically unresolvable
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error(ErrorKind::parameter, what) {}
};

class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(ErrorKind::budget, what) {}
};

// Raised when an alternating sum cannot be resolved even at the widest
// working precision.
class CancellationError : public Error {
 public:
  CancellationError(const std::string& what, double condition)
      : Error(ErrorKind::budget, what), condition_(condition) {}

  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace sidak
