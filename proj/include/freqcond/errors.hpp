#pragma once

#include <stdexcept>
#include <string>

namespace freqcond {

// Base for every domain error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input violates the operation contract (bad dimensions, empty observation,
// index out of range, malformed document).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A configured resource cap was exceeded; results are never silently truncated.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// Two routes that must agree exactly did not; indicates a bug, surfaced loudly.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

// The model does not determine the requested quantity (e.g. no unique
// stationary distribution).
class DegenerateModelError : public Error {
 public:
  using Error::Error;
};

// A stated precondition does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Conditioning on an event of probability zero.
class NullEventError : public Error {
 public:
  using Error::Error;
};

// A ratio was requested whose denominator is zero.
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

}  // namespace freqcond
