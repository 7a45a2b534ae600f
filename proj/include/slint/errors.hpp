#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slint {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (bad argument, malformed input structure).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A documented resource limit was exceeded (e.g. brute-force constant count).
class LimitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The goal is not a consequence of the input, so there is nothing to interpolate.
class NotEntailed : public Error {
 public:
  using Error::Error;
};

/// No term over the shared signature separates the goal, e.g. because the
/// input is jointly inconsistent or a separation needs an unshared symbol.
class NoSharedWitness : public Error {
 public:
  using Error::Error;
};

/// A computed interpolant failed its certificate re-check.
class VerificationFailed : public Error {
 public:
  using Error::Error;
};

/// An internal invariant broke; always an implementation bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace slint
