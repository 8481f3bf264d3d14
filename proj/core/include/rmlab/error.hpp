#pragma once

#include <stdexcept>
#include <string>

namespace rmlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid distribution or bound parameter (non-positive scale, rate, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A quantity requested outside the domain where it is finite.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operand dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Caller violated an operation precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Numerical search found no admissible solution.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

/// Functional is not symmetric convex, or a similar contract breach.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A construction could not be certified (e.g. shaper norm above 1).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Scenario configuration is invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Fewer data points than an estimator needs.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure; the message carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rmlab
