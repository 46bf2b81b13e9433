#pragma once

#include <stdexcept>
#include <string>

namespace binsig {

// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WidthMismatch : public Error {
 public:
  using Error::Error;
};

class NonIncreasingTimes : public Error {
 public:
  using Error::Error;
};

class BadPattern : public Error {
 public:
  using Error::Error;
};

class NonPositivePeriod : public Error {
 public:
  using Error::Error;
};

class NotInOrbit : public Error {
 public:
  using Error::Error;
};

class ConstantSignal : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class EmptyWord : public Error {
 public:
  using Error::Error;
};

// Raised by the text parsers; carries 1-based source coordinates.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ":" + std::to_string(column) +
              ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A well-formed directive whose content violates the format's rules.
class SemanticError : public Error {
 public:
  SemanticError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

class MissingRepeatClause : public Error {
 public:
  using Error::Error;
};

}  // namespace binsig
