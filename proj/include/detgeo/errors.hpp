#pragma once

#include <stdexcept>
#include <string>

namespace detgeo {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operand dimensions do not match what the operation requires.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Non-finite entries, out-of-range parameters, bad configuration values.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be invertible (or of full column rank) is not.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& msg, double smallest_singular_value)
      : Error(msg), smallest_singular_value(smallest_singular_value) {}
  double smallest_singular_value;
};

/// A structural invariant of a domain object fails beyond tolerance.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Two frames were expected to span the same subspace but do not.
class NotSameFiberError : public Error {
 public:
  NotSameFiberError(const std::string& msg, double residual)
      : Error(msg), residual(residual) {}
  double residual;
};

/// Finite-difference stencils disagree beyond the trust threshold.
class NumericalInstabilityError : public Error {
 public:
  using Error::Error;
};

/// File or stream I/O failure in the harness.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace detgeo
