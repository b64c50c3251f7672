#pragma once

#include <stdexcept>
#include <string>

namespace gsamp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an argument outside the operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested measurement budget cannot be met on this graph.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical kernel stopped before meeting its accuracy target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace gsamp
