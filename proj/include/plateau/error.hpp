#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plateau {

enum class ErrorCode {
  InvalidArgument,
  NonConvergence,
  NonFinite,
  NoSignChange,
  UnsupportedLambda,
  WrongCase,
  OutOfRange,
  BelowThreshold,
  GraphRegime,
  NotFoundInRange,
  EndpointViolation,
  RadiusTooLarge,
  MismatchBeyondTolerance,
  NotGraphRegime,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::UnsupportedLambda: return "UnsupportedLambda";
    case ErrorCode::WrongCase: return "WrongCase";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BelowThreshold: return "BelowThreshold";
    case ErrorCode::GraphRegime: return "GraphRegime";
    case ErrorCode::NotFoundInRange: return "NotFoundInRange";
    case ErrorCode::EndpointViolation: return "EndpointViolation";
    case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorCode::MismatchBeyondTolerance: return "MismatchBeyondTolerance";
    case ErrorCode::NotGraphRegime: return "NotGraphRegime";
  }
  return "Unknown";
}

/// Library-wide exception. Every failure carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plateau
