#pragma once

#include <stdexcept>
#include <string>

namespace glwb {

enum class ErrorKind {
  Syntax,
  KindClash,
  NormalFormViolation,
  Capture,
  UnsupportedNegation,
  UnboundVariable,
  CapExceeded,
  NonMonotone,
  AlphabetTooSmall,
  ReservedNameClash,
  NotRightLinear,
  NotSeparable,
  BudgetExceeded,
  IncompleteInstantiation,
  TooManyAtoms,
  WidthMismatch,
  PartitionViolation,
  Format,
  Usage,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failure with a 1-based line/column into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& msg)
      : Error(ErrorKind::Syntax, std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace glwb
