#pragma once

#include <stdexcept>
#include <string>

namespace qcolloid {

// Root of the library's error hierarchy. CLI maps InputError to exit
// code 1 and NumericalError to exit code 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments, violated preconditions, malformed files.
struct InputError : Error {
  using Error::Error;
};

// An iteration or check failed to converge or a verified property was
// found violated at run time.
struct NumericalError : Error {
  using Error::Error;
};

struct DegenerateParameter : InputError {
  using InputError::InputError;
};

// Q is zero or its top two eigenvalues coincide; the uniaxial frame is
// not defined there.
struct DegenerateTensor : InputError {
  using InputError::InputError;
};

struct NonUnitDirector : InputError {
  using InputError::InputError;
};

struct DomainError : InputError {
  using InputError::InputError;
};

struct NotC11 : InputError {
  using InputError::InputError;
};

struct UnsupportedPair : InputError {
  using InputError::InputError;
};

struct DegenerateNormal : InputError {
  using InputError::InputError;
};

struct DegenerateProjection : InputError {
  using InputError::InputError;
};

struct NoConvergence : NumericalError {
  using NumericalError::NumericalError;
};

struct NonConvergedDegree : NumericalError {
  using NumericalError::NumericalError;
};

struct StabilityViolation : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace qcolloid
