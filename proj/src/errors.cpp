#include "charvar/errors.hpp"

namespace charvar {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DescriptorInvalid: return "DescriptorInvalid";
    case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorKind::ClassMismatch: return "ClassMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotExponentCanceling: return "NotExponentCanceling";
    case ErrorKind::NotARepresentation: return "NotARepresentation";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::AmbiguousClass: return "AmbiguousClass";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotDetOne: return "NotDetOne";
    case ErrorKind::FormatError: return "FormatError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorKind::SyntaxError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace charvar
