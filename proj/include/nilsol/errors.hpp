#pragma once

#include <stdexcept>

namespace nilsol {

/// Base class of everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Wrong matrix shape, wrong tuple length, mismatched (p, q).
struct StructuralError : Error {
  using Error::Error;
};

/// Group element fails the invertibility check.
struct InvalidElementError : Error {
  using Error::Error;
};

/// Operation is undefined on the zero tuple.
struct DegenerateInputError : Error {
  using Error::Error;
};

/// Family parameter missing, unknown, or out of range.
struct ParameterError : Error {
  using Error::Error;
};

/// On-disk document violates the tuple schema.
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace nilsol
