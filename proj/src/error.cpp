#include "gtank/error.hpp"

namespace gtank {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidRange: return "invalid-range";
    case ErrorCode::InvalidQuery: return "invalid-query";
    case ErrorCode::InvalidPoint: return "invalid-point";
    case ErrorCode::EmptySample: return "empty-sample";
    case ErrorCode::InsufficientSample: return "insufficient-sample";
    case ErrorCode::TooFewSamples: return "too-few-samples";
    case ErrorCode::DegenerateSplit: return "degenerate-split";
    case ErrorCode::InvalidSerial: return "invalid-serial";
    case ErrorCode::InvalidSample: return "invalid-sample";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::NonPositiveSize: return "non-positive-size";
    case ErrorCode::Oversample: return "oversample";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

}  // namespace gtank
