#include "gtank/tank_estimators.hpp"

#include <string>

#include "gtank/combinatorics.hpp"
#include "gtank/error.hpp"

namespace gtank {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Gtp: return "GTP";
    case Method::GtpUm: return "GTP_UM";
    case Method::Mfp: return "MFP";
    case Method::FixedGapExactK1: return "FIXED_GAP_EXACT_K1";
    case Method::FixedGapApprox: return "FIXED_GAP_APPROX";
    case Method::FixedGapInvertExact: return "FIXED_GAP_INVERT_EXACT";
  }
  return "UNKNOWN";
}

namespace {

void require_spread_range(std::int64_t N, std::int64_t k, const char* what) {
  if (k < 2 || k > N) {
    fail(ErrorCode::InvalidRange, std::string(what) + " requires 2 <= k <= N, got N=" +
                                      std::to_string(N) + " k=" + std::to_string(k));
  }
}

}  // namespace

Estimate gtp_estimate(const Sample& sample) {
  const auto k = static_cast<double>(sample.size());
  const auto m = static_cast<double>(sample.max());
  return {m * (1.0 + 1.0 / k) - 1.0, Method::Gtp, {}};
}

Estimate gtp_um_estimate(const Sample& sample) {
  if (sample.size() < 2) {
    fail(ErrorCode::InsufficientSample, "GTP-UM needs at least two serials");
  }
  const auto k = static_cast<double>(sample.size());
  const auto s = static_cast<double>(sample.spread());
  return {s * (1.0 + 2.0 / (k - 1.0)) - 1.0, Method::GtpUm, {}};
}

Rational gtp_value_exact(const Sample& sample) {
  const std::int64_t k = sample.size();
  return ratio(sample.max() * (k + 1), k) - 1;
}

Rational gtp_um_value_exact(const Sample& sample) {
  const std::int64_t k = sample.size();
  if (k < 2) fail(ErrorCode::InsufficientSample, "GTP-UM needs at least two serials");
  return ratio(sample.spread() * (k + 1), k - 1) - 1;
}

Rational spread_pmf(std::int64_t N, std::int64_t k, std::int64_t s) {
  require_spread_range(N, k, "spread_pmf");
  if (s < k - 1 || s > N - 1) return 0;
  // (N - s) placements of the extremes, C(s-1, k-2) fillings between them.
  const BigInt ways = BigInt(static_cast<long>(N - s)) *
                      binomial(static_cast<std::uint64_t>(s - 1), static_cast<std::uint64_t>(k - 2));
  return Rational(ways, binomial(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(k)));
}

SpreadMoments spread_moments(std::int64_t N, std::int64_t k) {
  require_spread_range(N, k, "spread_moments");
  const Rational mean = ratio((N + 1) * (k - 1), k + 1);
  const Rational variance =
      Rational(BigInt(2) * (k - 1) * (N + 1) * (N - k),
               BigInt(static_cast<long>(k + 1)) * (k + 1) * (k + 2));
  return {mean, variance + mean * mean, variance};
}

Rational gtp_variance(std::int64_t N, std::int64_t k) {
  if (k < 1 || k > N) {
    fail(ErrorCode::InvalidRange, "gtp_variance requires 1 <= k <= N, got N=" +
                                      std::to_string(N) + " k=" + std::to_string(k));
  }
  return Rational(BigInt(static_cast<long>(N + 1)) * (N - k), BigInt(static_cast<long>(k)) * (k + 2));
}

Rational gtp_um_variance(std::int64_t N, std::int64_t k) {
  require_spread_range(N, k, "gtp_um_variance");
  return Rational(BigInt(2) * (N + 1) * (N - k), BigInt(static_cast<long>(k - 1)) * (k + 2));
}

}  // namespace gtank
