#pragma once

#include <stdexcept>
#include <string>

namespace olx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A prime or index lies outside the range a model has data for.
class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The model has no direct oracle for the requested operation.
class UnsupportedModelError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Degenerate factors, non-convergence, or non-finite values.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant failed on computed data (signals a bug upstream).
class InvariantError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A computation would exceed one of the configured budgets.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace olx
