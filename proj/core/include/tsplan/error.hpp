#pragma once

#include <stdexcept>
#include <string>

namespace tsplan {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad model documents, invalid probabilities, unknown or
/// duplicate ids. The message names the offending id and the constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid request that cannot be served: oracle instance too
/// large, planner invoked on a model shape it does not handle.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsplan
