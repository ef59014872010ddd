#pragma once

#include <stdexcept>
#include <string>

namespace requisite {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A value object violates one of its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A quantity is missing its unit label or carries an unknown one.
class UnitError : public Error {
 public:
  using Error::Error;
};

/// Quantities with different time units were combined.
class UnitMismatchError : public UnitError {
 public:
  using UnitError::UnitError;
};

/// An enumeration was refused because the search space exceeds its guard.
class RefusalError : public Error {
 public:
  using Error::Error;
};

}  // namespace requisite
