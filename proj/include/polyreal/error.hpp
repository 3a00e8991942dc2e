#pragma once

#include <stdexcept>
#include <string>

namespace polyreal {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (dimension mismatch, bad degree, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input text does not conform to the polynomial grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A dense kernel failed to converge or a rank decision made a problem degenerate.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// S0*Z lost column rank: the shift eigenproblem would have infinite eigenvalues.
class DegenerateShiftError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The null-space degree structure did not stabilize within the degree schedule.
class NoStabilizationError : public Error {
 public:
  using Error::Error;
};

/// Realization preconditions (pivot placement, singular extraction) do not hold.
class RealizationError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyreal
