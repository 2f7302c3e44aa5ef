#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geolrc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public FieldError {
 public:
  DivisionByZero() : FieldError("division by zero in finite field") {}
};

class FieldMismatch : public FieldError {
 public:
  FieldMismatch() : FieldError("operands belong to different fields") {}
};

/// Syntax error in an expression or literal; `position` is a 0-based offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

/// A family precondition or construction invariant does not hold.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Config file problem; `line` is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace geolrc
