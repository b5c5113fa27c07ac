#pragma once

#include <stdexcept>
#include <string>

namespace serret {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration: precision out of range, bounds that the working
// precision cannot support, malformed curve parameters.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An integrand returned a non-finite value at an interior node.
class IntegrandError : public Error {
 public:
  using Error::Error;
};

// An iterative method stopped before meeting its tolerance. The best
// available estimate is carried along as a decimal string.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::string best_estimate)
      : Error(what), best_estimate_(std::move(best_estimate)) {}

  const std::string& best_estimate() const noexcept { return best_estimate_; }

 private:
  std::string best_estimate_;
};

// Two routes that must agree did not.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

// A recovered integer relation failed re-verification at higher precision.
class SpuriousRelationError : public Error {
 public:
  using Error::Error;
};

}  // namespace serret
