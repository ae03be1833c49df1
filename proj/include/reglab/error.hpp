#pragma once

#include <stdexcept>
#include <string>

namespace reglab {

// Bad user input: malformed text, unknown names, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain violation of a mathematical function (log of a non-positive number, poles).
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

// An iterative numerical method failed to reach its target.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reglab
