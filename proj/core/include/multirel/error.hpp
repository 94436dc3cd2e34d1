#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace multirel {

enum class ErrorKind {
  CardinalityLimit,
  TypeMismatch,
  ResultTooLarge,
  EmptyFamily,
  NotUpClosed,
  NotUnivalent,
  SpaceTooLarge,
  SyntaxError,
  TypeError,
  UnknownDemo,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Source location attached to syntax and type errors from the law parser.
class SourceError : public Error {
 public:
  SourceError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& message)
      : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                        message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace multirel
