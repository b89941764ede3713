#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbcsp {

/// A model parameter or operation argument is outside its domain.
class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The tuple space d^k cannot be represented in exact mode.
class OverflowError : public ParamError {
 public:
  using ParamError::ParamError;
};

/// An enumeration or sampling budget would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on an input that violates its precondition,
/// e.g. asking for a repair of an assignment that is not a solution.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed RB1 instance text or assignment text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " at line " + std::to_string(line)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace rbcsp
