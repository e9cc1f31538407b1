#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grassmap {

enum class ErrorKind {
  NonPureInput,
  DegeneratePlane,
  DimensionMismatch,
  SamplingFailure,
  UnsupportedDimension,
  TrialityValidationFailure,
  NotSpin7,
  InvalidStiefelPair,
  InvalidQPoint,
  UnsupportedN,
  UsageError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPureInput: return "NonPureInput";
    case ErrorKind::DegeneratePlane: return "DegeneratePlane";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SamplingFailure: return "SamplingFailure";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::TrialityValidationFailure: return "TrialityValidationFailure";
    case ErrorKind::NotSpin7: return "NotSpin7";
    case ErrorKind::InvalidStiefelPair: return "InvalidStiefelPair";
    case ErrorKind::InvalidQPoint: return "InvalidQPoint";
    case ErrorKind::UnsupportedN: return "UnsupportedN";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace grassmap
