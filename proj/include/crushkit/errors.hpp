#pragma once

#include <stdexcept>
#include <string>

namespace crushkit {

/// Malformed TRI1/SURF1 text.  `line()` is 1-based; 0 when not line-specific.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// An operation was called on an input outside its domain
/// (e.g. an invalid or non-closed triangulation).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A normal coordinate vector that is not an admissible normal surface.
class InadmissibleSurface : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed.  Always signals a bug.
class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace crushkit
