#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treksep {

/// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph file. `line()` is 1-based, 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A graph that parsed but breaks a structural rule (acyclicity, U/W partition, ...).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Bad query arguments: vertex out of range, wrong graph class for the operation, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace treksep
