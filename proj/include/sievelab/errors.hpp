#pragma once

#include <stdexcept>
#include <string>

namespace sievelab {

/// Caller violated a documented precondition (bad range, inadmissible tuple, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested table does not fit the configured memory budget.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Two independent computation routes disagreed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A matrix that must be positive definite was not.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace sievelab
