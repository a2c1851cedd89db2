#pragma once

#include <stdexcept>
#include <string>

namespace isogeo {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point or vector dimension does not match the manifold.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A map was evaluated outside the region where it is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed arguments: empty lists, non-finite coordinates, bad sizes.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A curve collapsed to a point where a nondegenerate one is required.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// A scalar solve (bracketing, bisection) failed to converge.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration could not be parsed or validated.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace isogeo
