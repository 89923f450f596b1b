#pragma once

#include <stdexcept>
#include <string>

namespace tcfp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// A coefficient beyond the known precision was requested, or an operation
/// needs more q-expansion coefficients than it was given.
class PrecisionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precision"; }
};

/// An argument lies outside the operation's domain (bad weight, Im(tau) <= 0,
/// mismatched rings, ...).
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// Input text could not be parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const noexcept { return line_; }
  const char* kind() const noexcept override { return "parse"; }

 private:
  int line_;
};

/// A numerical procedure could not reach its stated tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numerical"; }
};

}  // namespace tcfp
