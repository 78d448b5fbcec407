#pragma once

#include <stdexcept>
#include <string>

namespace unitfrac {

/// Input violates an operation's precondition or schema.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but exceeds a configured search or enumeration cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace unitfrac
