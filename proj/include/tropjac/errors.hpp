#pragma once

#include <stdexcept>
#include <string>

namespace tropjac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, schema violations, unknown ids.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace tropjac
