#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jacobi {

enum class ErrorKind {
  Parse,
  UndeclaredIdentifier,
  ZeroDenominator,
  UnknownVariable,
  VanishingDenominator,
  UnboundVariable,
  InvalidSystem,
  NotSquare,
  OddDegree,
  NotFixedPoint,
  NonIsolatedFixedPoints,
  UnsupportedDimension,
  AssumptionViolated,
  DegenerateChain,
  InvalidArgument,
  Numerical,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax error with a 0-based character offset (or a 1-based line number
/// when raised by a line-oriented file reader; `line` is 0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position, std::size_t line = 0)
      : Error(ErrorKind::Parse, what), position_(position), line_(line) {}

  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t position_;
  std::size_t line_;
};

}  // namespace jacobi
