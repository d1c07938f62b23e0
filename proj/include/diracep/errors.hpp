#pragma once

#include <stdexcept>
#include <string>

namespace diracep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: non-square or non-finite matrices, bad parameters,
/// mismatched lengths or dimensions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical backend failed (no convergence, residual check violated).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but the operation's precondition does not hold,
/// e.g. the requested point is not a degeneracy.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace diracep
