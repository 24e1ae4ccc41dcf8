#pragma once

#include <stdexcept>
#include <string>

namespace matrex {

// Base class for everything thrown on purpose. The CLI maps each subclass to
// a fixed exit code; anything else escaping to main is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller handed us something malformed: bad ranges, violated preconditions,
// inputs that fail validation. CLI exit code 2.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Malformed JSON or a document that does not match the expected schema.
// Message carries the JSON path of the offending node. CLI exit code 2.
class ParseError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

// A configured cap (basis count, fiber nodes, time limit) was hit before the
// computation finished. The result is unknown, not false. CLI exit code 3.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// A search completed and contradicts a claim that is supposed to hold. These
// are the events the whole laboratory exists to surface. CLI exit code 4.
class Falsification : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed: a generated swap is not valid, a coloring is
// not proper, a certificate we just built does not replay. Always a bug here,
// never a property of the input. CLI exit code 1.
class InternalConsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace matrex
