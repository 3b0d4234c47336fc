#pragma once

#include <stdexcept>
#include <string>

namespace csys {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// compose() called on a non-composable pair, or a table entry is missing.
struct CompositionError : Error {
  using Error::Error;
};

struct UnknownId : Error {
  using Error::Error;
};

// A derived carrier would exceed the configured element limit.
struct BoundExceeded : Error {
  using Error::Error;
};

// An object of length above the truncation depth would be needed.
struct TruncationError : Error {
  using Error::Error;
};

// A universal property failed: no mediator, several mediators, or a
// component that should be invertible is not.
struct StructureError : Error {
  using Error::Error;
};

}  // namespace csys
