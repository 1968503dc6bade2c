#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "gtank/sample.hpp"

namespace gtank {

enum class Method {
  Gtp,
  GtpUm,
  Mfp,
  FixedGapExactK1,
  FixedGapApprox,
  FixedGapInvertExact,
};

std::string_view to_string(Method method) noexcept;

/// Partition of a sorted sample into l runs at the l-1 largest gaps.
/// Factory indices are 1-based; gap positions are 0-based, gap i lying
/// between serials[i] and serials[i+1].
struct MfpSplit {
  std::vector<Sample> sub_samples;
  std::vector<int> good_indices;
  std::vector<int> bad_indices;
  double n_good_sum = 0.0;       // sum of the good sub-estimates
  std::int64_t k_good_sum = 0;   // serials covered by good sub-samples
  std::vector<std::int64_t> chosen_gap_positions;
  std::vector<double> sub_estimates;  // one per factory, bad entries patched
  bool lower_known = true;
  // Set when the minimum is unknown and X_1 is a singleton: X_1 is then
  // patched like any other bad factory.
  bool first_routed_to_bad = false;
};

struct FixedGapDiagnostics {
  Serial observed_max = 0;
  std::int64_t k = 0;
  // max(value, k); the raw value is kept in Estimate::value.
  double clamped_value = 0.0;
  // Integer bracket [lo, hi] for the exact-inversion path.
  std::optional<std::pair<std::int64_t, std::int64_t>> inversion_bracket;
};

using Diagnostics = std::variant<std::monostate, MfpSplit, FixedGapDiagnostics>;

struct Estimate {
  double value = 0.0;
  Method method = Method::Gtp;
  Diagnostics diagnostics;
};

}  // namespace gtank
