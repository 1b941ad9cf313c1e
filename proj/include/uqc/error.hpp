#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uqc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed gate: bad arity, repeated qubit, or index out of range.
class GateError : public Error {
 public:
  explicit GateError(const std::string& message) : Error(message) {}
};

/// Operands with incompatible sizes (qubit counts, bit strings, registers).
class SizeError : public Error {
 public:
  explicit SizeError(const std::string& message) : Error(message) {}
};

/// Simulation or enumeration would exceed a configured limit.
class LimitError : public Error {
 public:
  explicit LimitError(const std::string& message) : Error(message) {}
};

class LoweringError : public Error {
 public:
  explicit LoweringError(const std::string& message) : Error(message) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A self-check that can only fail through a bug in this library.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& message) : std::logic_error(message) {}
};

}  // namespace uqc
