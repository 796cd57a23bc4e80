#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lvk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroDivision : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised by the expression and system parsers; line/column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }
  int line_;
  int column_;
};

/// The 1-form handed to the integrator fails a symmetry condition.
class NotClosedError : public Error {
 public:
  NotClosedError(const std::string& what, std::size_t i, std::size_t j)
      : Error(what), i_(i), j_(j) {}
  std::size_t first() const { return i_; }
  std::size_t second() const { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

/// The residue resultant has coefficients that are not constants after
/// content removal; only happens for inputs that are not exact differentials.
class NonConstantResidue : public Error {
 public:
  using Error::Error;
};

/// An input object (Darboux polynomial, exponential factor, multiplier,
/// first integral) fails the identity it is claimed to satisfy.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

class DegreeLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace lvk
