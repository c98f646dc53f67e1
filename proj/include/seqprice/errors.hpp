#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqprice {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: unknown identifiers, unpriced items,
/// invalid valuation tables.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Structured-text input that failed to parse. Carries a 1-based location.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An exhaustive search would exceed its configured guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The instance does not satisfy what an algorithm requires of it
/// (e.g. a non gross-substitutes valuation handed to the GS pricing).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal guarantee failed. Never expected on valid input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace seqprice
