#pragma once

#include <stdexcept>
#include <string>

namespace l2sos {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (size, range, shape).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exhaustive oracle was asked to scan more vertices than its cap allows.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// A pair-indexed vector is not the level-2 vector of any +-1 labeling.
class InconsistentLevel2 : public Error {
 public:
  using Error::Error;
};

/// Text input (edge list, instance file) could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A numerical consistency check failed (e.g. slack reconstruction).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace l2sos
