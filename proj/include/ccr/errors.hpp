#ifndef CCR_ERRORS_HPP
#define CCR_ERRORS_HPP

#include <stdexcept>

namespace ccr {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Answering the query would require breadth-first search past the configured
// maximum exploration radius.
struct RadiusExceededError : Error {
  using Error::Error;
};

// An exhaustive enumeration would exceed the configured cap.
struct EnumerationCapError : Error {
  using Error::Error;
};

// A caller violated a documented precondition.
struct PreconditionError : Error {
  using Error::Error;
};

// No object with the requested property exists within the search cutoff.
struct InfeasibleError : Error {
  using Error::Error;
};

// Malformed input text or document.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace ccr

#endif  // CCR_ERRORS_HPP
