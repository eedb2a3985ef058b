#pragma once

#include <stdexcept>
#include <string>

namespace cechpix {

/// Raised for malformed or out-of-range input (bad files, bad parameters).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal structural invariant is violated. This always
/// indicates a bug, never bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised by the iterative ball-intersection test when it cannot decide.
class IndeterminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a run exceeds a caller-imposed size budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CECHPIX_ASSERT(cond, msg)                                   \
  do {                                                              \
    if (!(cond)) throw ::cechpix::InvariantError(std::string(msg)); \
  } while (0)

}  // namespace cechpix
