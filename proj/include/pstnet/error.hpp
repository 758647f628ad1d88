#pragma once

#include <stdexcept>
#include <string>

namespace pstnet {

/// Base class of every domain error raised by the library. The CLI maps
/// these to exit status 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the documented domain of an operation.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The ring geometry does not support the requested operation (odd N for
/// antipodal transfer, for instance).
class UnsupportedGeometry : public Error {
 public:
  using Error::Error;
};

/// Cat-state normalization vanishes (odd cat with alpha -> 0).
class DegenerateState : public Error {
 public:
  using Error::Error;
};

/// Input data violates a structural assumption (non-unitary propagator,
/// mismatched dimensions, fidelity outside [0, 1]).
class InconsistentInput : public Error {
 public:
  using Error::Error;
};

}  // namespace pstnet
