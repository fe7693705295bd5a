#pragma once

#include <stdexcept>
#include <string>

namespace wcema {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose lengths do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A NaN or infinity was produced or supplied, or a division by zero.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not available for this combination of inputs.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// A parameter lies outside the domain where the formula is valid.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace wcema
