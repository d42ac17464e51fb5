#pragma once

#include <stdexcept>
#include <string>

namespace trailerfuzz {

// Raised for non-finite crisp inputs or plant states.
class InputDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a caller violates an operation's contract (arity, limits, empty grids).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a controller definition or input document is malformed.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trailerfuzz
