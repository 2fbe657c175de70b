#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hlmax {

enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  NonpositiveMass,
  QuadratureNonconvergence,
  EmptyBall,
  EmptyFamily,
  UnknownPreset,
  ParseError,
  Unsupported,
  SelectionFailed,
  VerificationFailed,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::NonpositiveMass: return "NONPOSITIVE_MASS";
    case ErrorCode::QuadratureNonconvergence: return "QUADRATURE_NONCONVERGENCE";
    case ErrorCode::EmptyBall: return "EMPTY_BALL";
    case ErrorCode::EmptyFamily: return "EMPTY_FAMILY";
    case ErrorCode::UnknownPreset: return "UNKNOWN_PRESET";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
    case ErrorCode::SelectionFailed: return "SELECTION_FAILED";
    case ErrorCode::VerificationFailed: return "VERIFICATION_FAILED";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the Theorem 2 verifier; `level()` is the offending depth n.
class VerificationError : public Error {
 public:
  VerificationError(int level, const std::string& message)
      : Error(ErrorCode::VerificationFailed, "level " + std::to_string(level) + ": " + message),
        level_(level) {}

  int level() const noexcept { return level_; }

 private:
  int level_;
};

}  // namespace hlmax
