#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apolar {

enum class ErrorKind {
  DegreeMismatch,
  SizeLimit,
  SyntaxError,
  UndefinedGate,
  NonSkewMul,
  DuplicateGateId,
  IndexOutOfRange,
  EmptyGraph,
  BadPartition,
  BadDims,
  SameEndpoints,
  LengthMismatch,
  OddN,
  SolveFailure,
  NotADecomposition,
  VerificationFailure,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// The single exception type thrown by the library. `kind()` identifies the
/// failure class; `what()` carries a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndefinedGate: return "UndefinedGate";
    case ErrorKind::NonSkewMul: return "NonSkewMul";
    case ErrorKind::DuplicateGateId: return "DuplicateGateId";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::BadPartition: return "BadPartition";
    case ErrorKind::BadDims: return "BadDims";
    case ErrorKind::SameEndpoints: return "SameEndpoints";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::OddN: return "OddN";
    case ErrorKind::SolveFailure: return "SolveFailure";
    case ErrorKind::NotADecomposition: return "NotADecomposition";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace apolar
