#pragma once

#include <stdexcept>
#include <string>

namespace asclust {

// Base of every error the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (shapes, index ranges, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// A dual point outside the product of balls was handed to dual_objective.
class InfeasibleDual : public Error {
 public:
  using Error::Error;
};

// Linear algebra failure inside a sub-solver (e.g. a singular factorization).
class SolverError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), message_(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }
  // The message without the line suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
};

}  // namespace asclust
