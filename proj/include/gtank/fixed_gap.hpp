#pragma once

#include <cstdint>
#include <optional>

#include "gtank/estimate.hpp"
#include "gtank/rational.hpp"
#include "gtank/sample.hpp"

namespace gtank {

/// l factories of N serials each, consecutive factories separated by G
/// unused serials. Factory f (1-based) covers
/// [(f-1)(N+G) + 1, (f-1)(N+G) + N].
struct FixedGapModel {
  std::int64_t factories = 1;
  std::int64_t gap = 0;
  std::int64_t factory_size = 1;

  /// Throws InvalidRange unless l >= 1, G >= 0, N >= 1.
  void validate() const;

  std::int64_t total() const { return factories * factory_size; }

  /// 1-based factory containing `serial`, or nothing if it is in a gap or out of range.
  std::optional<std::int64_t> factory_of(Serial serial) const;

  /// Serial with all gaps below it removed, in {1..lN}. Throws InvalidSerial.
  std::int64_t gap_free(Serial serial) const;

  /// Cumulative gap below `serial`: G(f-1). Throws InvalidSerial.
  std::int64_t offset(Serial serial) const;

  /// Offset as a function of the gap-free serial: G floor((x - 1)/N).
  std::int64_t offset_of_gap_free(std::int64_t gap_free_serial) const;
};

/// P(max = serial) for a uniform k-subset of the layout.
Rational max_pmf(const FixedGapModel& model, std::int64_t k, Serial serial);

/// E[H] = G l - G / C(lN, k) * sum_{t=1}^{l} C(tN, k); valid for 1 <= k <= lN.
Rational expected_h_exact(const FixedGapModel& model, std::int64_t k);

/// E[M] = k(lN + 1)/(k + 1) + E[H].
Rational expected_max_exact(const FixedGapModel& model, std::int64_t k);

struct HApproximation {
  double value = 0.0;
  bool out_of_regime = false;  // k > N, where the large-N expansion is unreliable
};

/// G (k l/(k+1) - 1/2).
HApproximation expected_h_approx(const FixedGapModel& model, std::int64_t k);

/// Unbiased single-draw estimator (2M - G(l-1) - 1)/l. Negative values are returned raw.
Estimate fixed_gap_estimate_k1(std::int64_t factories, std::int64_t gap, Serial max_serial);

/// Approximate estimator (1/l)((k+1)M/k - G l + G(k+1)/(2k) - 1).
Estimate fixed_gap_estimate(std::int64_t factories, std::int64_t gap, std::int64_t k,
                            Serial max_serial);

/// Solves E[M](N) = observed max for N using the exact expectation,
/// interpolating linearly between the bracketing integers.
Estimate fixed_gap_invert_exact(std::int64_t factories, std::int64_t gap, std::int64_t k,
                                Serial max_serial);

}  // namespace gtank
