#pragma once

#include <stdexcept>
#include <string>

namespace gengm {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, non-finite entries, violated preconditions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a result (singular matrix, no convergence).
class NumericFailure : public Error {
 public:
  using Error::Error;
};

/// The u_L^{beta-1} factor blows up (beta < 1 with u_L at zero).
class SingularGradient : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

/// A structural hypothesis on the true parameters does not hold.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

/// Regularization parameters fall outside the region where a constant is defined.
class OutsideValidityRegion : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds a brute-force routine's cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace gengm
