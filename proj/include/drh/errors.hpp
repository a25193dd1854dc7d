#pragma once

#include <stdexcept>
#include <string>

namespace drh {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation (s <= 0, lambda = 0 where singular, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

// Gamma-function style pole: z in {0, -1, -2, ...} or c(0).
class PoleError : public DomainError {
  public:
    using DomainError::DomainError;
};

// Malformed argument: non-ascending grid, empty list, mismatched sizes.
class ArgumentError : public Error {
  public:
    using Error::Error;
};

// A documented precondition of an operation does not hold (parameter ranges, support conditions).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

// The inversion constant of a space was requested before calibration.
class CalibrationError : public Error {
  public:
    using Error::Error;
};

// A grid does not resolve the object it is asked to carry.
class ResolutionError : public Error {
  public:
    using Error::Error;
};

// Numerical failure (ODE step collapse, non-finite quadrature) at a known location.
class NumericalError : public Error {
  public:
    NumericalError(const std::string& what, double where)
        : Error(what + " (at " + std::to_string(where) + ")"), where_(where) {}

    double where() const noexcept { return where_; }

  private:
    double where_;
};

}  // namespace drh
