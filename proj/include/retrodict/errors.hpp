#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace retrodict {

/// Caller supplied something the operation cannot accept (dimension mismatch,
/// invalid parameter, malformed file).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file. Line and column are 1-based; 0 means unknown.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Retrodiction requested for a final state that has zero probability.
class UndefinedRetrodiction : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument outside the mathematical domain of a closed form (t <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An identity that must hold by construction was violated: a computation bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Monte-Carlo estimate cannot be trusted (too few occupied bins, ...).
class UnreliableEstimate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace retrodict
