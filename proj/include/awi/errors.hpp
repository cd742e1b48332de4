#pragma once

#include <stdexcept>
#include <string>

namespace awi {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (message carries the line number).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A value violates a documented invariant; message names the field.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Iterative scheme failed to reach its own tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Mathematically degenerate input (singular system, zero denominator,
// under-resolved quadrature).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A search found nothing to report (no minimum, no gain).
class SearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace awi
