#pragma once

#include <stdexcept>
#include <string>

namespace srgcert {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Structurally invalid model: non-square, ragged rows, improper entry.
class ModelError : public Error {
 public:
  using Error::Error;
};

class PoleOnAxisError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class IllPosedError : public Error {
 public:
  using Error::Error;
};

class OpenLoopUnstableError : public Error {
 public:
  using Error::Error;
};

/// Winding number cannot be trusted on the given locus.
class WindingError : public Error {
 public:
  using Error::Error;
};

class OriginProximityError : public WindingError {
 public:
  using WindingError::WindingError;
};

class PhaseStepError : public WindingError {
 public:
  using WindingError::WindingError;
};

class WindingAccuracyError : public WindingError {
 public:
  using WindingError::WindingError;
};

}  // namespace srgcert
