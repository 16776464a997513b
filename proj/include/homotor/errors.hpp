#pragma once

#include <stdexcept>
#include <string>

namespace homotor {

// Raised when operands live over different coefficient rings, or an
// operation needs a field and got Z/p^e.
class DomainMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed user input: bad shapes, identities that fail, non-homomorphisms.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation needs data beyond the truncation window it was given.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Enumeration or memory cap would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double required)
      : std::runtime_error(what), required_(required) {}
  double required() const noexcept { return required_; }

 private:
  double required_;
};

// Internal invariant broken. Always a bug in this library.
class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace homotor
