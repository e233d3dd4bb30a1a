#pragma once

#include <stdexcept>
#include <string>

namespace bcv {

/// Input violates an operation's precondition (wrong geometry, bad shape, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical check failed (residual, defect or drift above its threshold).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bcv
