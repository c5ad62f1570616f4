#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rcomp {

enum class ErrorCode {
  InvalidSpec,
  NonIncreasingWindow,
  InadmissibleIndex,
  XOutOfRange,
  TailNotConverged,
  PrecisionExhausted,
  LimitTooLarge,
  NoCompositions,
  NTooLarge,
  MismatchedSeries,
  Indeterminate,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "INVALID_SPEC";
    case ErrorCode::NonIncreasingWindow: return "NON_INCREASING_WINDOW";
    case ErrorCode::InadmissibleIndex: return "INADMISSIBLE_INDEX";
    case ErrorCode::XOutOfRange: return "X_OUT_OF_RANGE";
    case ErrorCode::TailNotConverged: return "TAIL_NOT_CONVERGED";
    case ErrorCode::PrecisionExhausted: return "PRECISION_EXHAUSTED";
    case ErrorCode::LimitTooLarge: return "LIMIT_TOO_LARGE";
    case ErrorCode::NoCompositions: return "NO_COMPOSITIONS";
    case ErrorCode::NTooLarge: return "N_TOO_LARGE";
    case ErrorCode::MismatchedSeries: return "MISMATCHED_SERIES";
    case ErrorCode::Indeterminate: return "INDETERMINATE";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is prefixed with the code name so it survives being printed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rcomp
