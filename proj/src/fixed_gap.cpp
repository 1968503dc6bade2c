#include "gtank/fixed_gap.hpp"

#include <algorithm>
#include <string>

#include "gtank/combinatorics.hpp"
#include "gtank/error.hpp"

namespace gtank {

namespace {

std::uint64_t u64(std::int64_t v) { return static_cast<std::uint64_t>(v); }

void require_k(const FixedGapModel& model, std::int64_t k) {
  model.validate();
  if (k < 1 || k > model.total()) {
    fail(ErrorCode::InvalidRange, "k must satisfy 1 <= k <= l*N = " + std::to_string(model.total()) +
                                      ", got " + std::to_string(k));
  }
}

FixedGapDiagnostics diagnostics_for(double value, std::int64_t k, Serial max_serial) {
  FixedGapDiagnostics d;
  d.observed_max = max_serial;
  d.k = k;
  d.clamped_value = std::max(value, static_cast<double>(k));
  return d;
}

}  // namespace

void FixedGapModel::validate() const {
  if (factories < 1 || gap < 0 || factory_size < 1) {
    fail(ErrorCode::InvalidRange, "fixed-gap model requires l >= 1, G >= 0, N >= 1, got l=" +
                                      std::to_string(factories) + " G=" + std::to_string(gap) +
                                      " N=" + std::to_string(factory_size));
  }
}

std::optional<std::int64_t> FixedGapModel::factory_of(Serial serial) const {
  if (serial < 1) return std::nullopt;
  const std::int64_t period = factory_size + gap;
  const std::int64_t f = (serial - 1) / period + 1;
  if (f > factories) return std::nullopt;
  if ((serial - 1) % period >= factory_size) return std::nullopt;
  return f;
}

std::int64_t FixedGapModel::offset(Serial serial) const {
  const auto f = factory_of(serial);
  if (!f) fail(ErrorCode::InvalidSerial, "serial " + std::to_string(serial) + " is not in any factory");
  return gap * (*f - 1);
}

std::int64_t FixedGapModel::gap_free(Serial serial) const { return serial - offset(serial); }

std::int64_t FixedGapModel::offset_of_gap_free(std::int64_t gap_free_serial) const {
  return gap * ((gap_free_serial - 1) / factory_size);
}

Rational max_pmf(const FixedGapModel& model, std::int64_t k, Serial serial) {
  require_k(model, k);
  const std::int64_t x = model.gap_free(serial);
  return Rational(binomial(u64(x - 1), u64(k - 1)), binomial(u64(model.total()), u64(k)));
}

Rational expected_h_exact(const FixedGapModel& model, std::int64_t k) {
  require_k(model, k);
  BigInt tail = 0;
  for (std::int64_t t = 1; t <= model.factories; ++t) {
    tail += binomial(u64(t * model.factory_size), u64(k));
  }
  const Rational g(static_cast<long>(model.gap));
  return g * model.factories - g * Rational(tail, binomial(u64(model.total()), u64(k)));
}

Rational expected_max_exact(const FixedGapModel& model, std::int64_t k) {
  return ratio(k * (model.total() + 1), k + 1) + expected_h_exact(model, k);
}

HApproximation expected_h_approx(const FixedGapModel& model, std::int64_t k) {
  model.validate();
  if (k < 1) fail(ErrorCode::InvalidRange, "k must be >= 1");
  const double kd = static_cast<double>(k);
  const double value = static_cast<double>(model.gap) *
                       (kd * static_cast<double>(model.factories) / (kd + 1.0) - 0.5);
  return {value, k > model.factory_size};
}

Estimate fixed_gap_estimate_k1(std::int64_t factories, std::int64_t gap, Serial max_serial) {
  if (factories < 1 || gap < 0 || max_serial < 1) {
    fail(ErrorCode::InvalidRange, "fixed-gap estimate requires l >= 1, G >= 0, M >= 1");
  }
  const double value = (2.0 * static_cast<double>(max_serial) -
                        static_cast<double>(gap) * static_cast<double>(factories - 1) - 1.0) /
                       static_cast<double>(factories);
  return {value, Method::FixedGapExactK1, diagnostics_for(value, 1, max_serial)};
}

Estimate fixed_gap_estimate(std::int64_t factories, std::int64_t gap, std::int64_t k,
                            Serial max_serial) {
  if (factories < 1 || gap < 0 || k < 1) {
    fail(ErrorCode::InvalidRange, "fixed-gap estimate requires l >= 1, G >= 0, k >= 1");
  }
  const double l = static_cast<double>(factories);
  const double g = static_cast<double>(gap);
  const double kd = static_cast<double>(k);
  const double m = static_cast<double>(max_serial);
  const double value = ((kd + 1.0) * m / kd - g * l + g * (kd + 1.0) / (2.0 * kd) - 1.0) / l;
  return {value, Method::FixedGapApprox, diagnostics_for(value, k, max_serial)};
}

Estimate fixed_gap_invert_exact(std::int64_t factories, std::int64_t gap, std::int64_t k,
                                Serial max_serial) {
  if (factories < 1 || gap < 0 || k < 1 || max_serial < k) {
    fail(ErrorCode::InvalidRange, "exact inversion requires l >= 1, G >= 0, k >= 1, M >= k");
  }
  const Rational target(static_cast<long>(max_serial));
  auto expected_max = [&](std::int64_t n) {
    return expected_max_exact(FixedGapModel{factories, gap, n}, k);
  };

  // E[H] >= 0, so E[M](N) >= k(lN+1)/(k+1) >= M once N >= hi.
  std::int64_t lo = (k + factories - 1) / factories;
  std::int64_t hi = std::max(lo, (max_serial * (k + 1)) / (k * factories) + 1);

  FixedGapDiagnostics diag = diagnostics_for(0.0, k, max_serial);
  double value = 0.0;
  if (expected_max(lo) >= target) {
    value = static_cast<double>(lo);
    diag.inversion_bracket = std::make_pair(lo, lo);
  } else {
    // Invariant: E[M](lo) < M <= E[M](hi).
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (expected_max(mid) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const Rational at_lo = expected_max(lo);
    const Rational at_hi = expected_max(hi);
    value = at_hi == at_lo ? static_cast<double>(hi)
                           : static_cast<double>(lo) + ((target - at_lo) / (at_hi - at_lo)).to_double();
    diag.inversion_bracket = std::make_pair(lo, hi);
  }
  diag.clamped_value = std::max(value, static_cast<double>(k));
  return {value, Method::FixedGapInvertExact, diag};
}

}  // namespace gtank
