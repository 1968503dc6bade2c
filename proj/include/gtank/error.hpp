#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gtank {

enum class ErrorCode {
  InvalidRange,
  InvalidQuery,
  InvalidPoint,
  EmptySample,
  InsufficientSample,
  TooFewSamples,
  DegenerateSplit,
  InvalidSerial,
  InvalidSample,
  DimensionMismatch,
  NonPositiveSize,
  Oversample,
  InvalidConfig,
  BudgetExceeded,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every precondition failure in the library is reported as an Error carrying
/// a machine-checkable code; the CLI maps codes to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Budget and regime failures are distinguished from plain bad input.
  bool is_budget_or_regime() const noexcept {
    return code_ == ErrorCode::BudgetExceeded || code_ == ErrorCode::InvalidPoint;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace gtank
