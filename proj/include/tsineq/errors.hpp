#pragma once

#include <stdexcept>
#include <string>

namespace tsineq {

enum class ErrorCode {
  EmptyScale,
  BadSegment,
  NotInScale,
  EmptyRange,
  SyntaxError,
  UnknownIdentifier,
  DomainError,
  OutOfRange,
  DegeneratePoint,
  DepthExceeded,
  NonPositiveWeight,
  OutOfWindow,
  ShiftNotInScale,
  NotContinuousScale,
  NotIntegerScale,
  ParseError,
  ValidationError,
  IoError,
  InvalidArgument,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyScale: return "EmptyScale";
    case ErrorCode::BadSegment: return "BadSegment";
    case ErrorCode::NotInScale: return "NotInScale";
    case ErrorCode::EmptyRange: return "EmptyRange";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::ShiftNotInScale: return "ShiftNotInScale";
    case ErrorCode::NotContinuousScale: return "NotContinuousScale";
    case ErrorCode::NotIntegerScale: return "NotIntegerScale";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

/// Exception carrying a machine-readable code alongside the message.
/// what() always starts with the code name so reports stay grep-able.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tsineq
