#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ergo {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or parameter-domain violation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed graph / incidence / certificate text.
class FormatError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, written or renamed.
class IoError : public Error {
 public:
  using Error::Error;
};

// A search ran out of its node budget before finishing.  Never a result.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t nodes)
      : Error(what + " (budget exhausted after " + std::to_string(nodes) + " nodes)"), nodes_(nodes) {}

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::uint64_t nodes_;
};

// A construction or algorithm self-check failed.  Always a bug, never data.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Iterative eigensolver did not reach its residual target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ergo
