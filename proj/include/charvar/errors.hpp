#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace charvar {

enum class ErrorKind {
  SyntaxError,
  UnknownGenerator,
  InvalidParameter,
  DescriptorInvalid,
  HypothesisNotMet,
  ClassMismatch,
  ShapeMismatch,
  NotExponentCanceling,
  NotARepresentation,
  NotAHomomorphism,
  AmbiguousClass,
  NotCommuting,
  NotUnitary,
  NotDetOne,
  FormatError,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind is the
/// stable, machine-readable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace charvar
