#include "gtank/miss_probability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtank/combinatorics.hpp"
#include "gtank/error.hpp"

namespace gtank {

namespace {

// Relative slack so that e.g. 100^0.5 lands on 10 rather than 9.999...
constexpr double kRoundingSlack = 1e-9;

std::uint64_t u64(std::int64_t v) { return static_cast<std::uint64_t>(v); }

}  // namespace

Rational p_miss_exact(const MissProbabilityQuery& q) {
  const auto N = q.factory_size, l = q.factories, k = q.samples;
  if (N < 1 || l < 1 || k < 1 || k > N * l) {
    fail(ErrorCode::InvalidQuery, "miss probability requires N >= 1, l >= 1, 1 <= k <= N*l, got N=" +
                                      std::to_string(N) + " l=" + std::to_string(l) +
                                      " k=" + std::to_string(k));
  }
  BigInt acc = 0;
  for (std::int64_t i = 1; i <= l - 1; ++i) {
    BigInt term = binomial(u64(l), u64(i)) * binomial(u64(N * (l - i)), u64(k));
    if (i % 2 == 1) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return Rational(acc, binomial(u64(N * l), u64(k)));
}

Rational p_miss_limit_exact(std::int64_t l, std::int64_t k) {
  if (l < 1 || k < 1) {
    fail(ErrorCode::InvalidRange, "miss-probability limit requires l >= 1 and k >= 1, got l=" +
                                      std::to_string(l) + " k=" + std::to_string(k));
  }
  BigInt acc = 0;
  for (std::int64_t i = 1; i <= l - 1; ++i) {
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(l - i), static_cast<unsigned long>(k));
    BigInt term = binomial(u64(l), u64(i)) * power;
    if (i % 2 == 1) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  BigInt denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(k));
  return Rational(acc, denom);
}

double p_miss_limit(std::int64_t l, std::int64_t k) {
  return p_miss_limit_exact(l, k).to_double();
}

double q_expectation(std::int64_t l, std::int64_t k) {
  if (l < 1 || k < 0) {
    fail(ErrorCode::InvalidRange, "q_expectation requires l >= 1 and k >= 0");
  }
  return std::pow(1.0 - 1.0 / static_cast<double>(l), static_cast<double>(k));
}

double q_variance(std::int64_t l, std::int64_t k) {
  if (l < 2 || k < 0) {
    fail(ErrorCode::InvalidRange, "q_variance requires l >= 2 and k >= 0, got l=" +
                                      std::to_string(l) + " k=" + std::to_string(k));
  }
  const double ld = static_cast<double>(l);
  const double kd = static_cast<double>(k);
  const double one_empty = std::pow(1.0 - 1.0 / ld, kd);
  const double two_empty = std::pow(1.0 - 2.0 / ld, kd);
  const double rho = (one_empty - two_empty) / ld;
  const double sigma = two_empty - one_empty * one_empty;
  // rho + sigma can dip below zero by rounding when the true variance is 0.
  return std::max(0.0, rho + sigma);
}

std::vector<CurvePoint> regime_curve(const GrowthRegime& regime, RegimeMapping mapping,
                                     std::span<const std::int64_t> inputs,
                                     std::optional<std::int64_t> factory_size) {
  if (!(regime.A > 0.0) || !(regime.c > 0.0)) {
    fail(ErrorCode::InvalidRange, "growth regime requires A > 0 and c > 0");
  }
  if (factory_size && *factory_size < 1) {
    fail(ErrorCode::InvalidRange, "factory size must be >= 1");
  }

  std::vector<CurvePoint> points;
  points.reserve(inputs.size());
  std::string offending;
  for (const std::int64_t input : inputs) {
    CurvePoint p;
    if (mapping == RegimeMapping::LOfK) {
      p.k = input;
      const double v = regime.A * std::pow(static_cast<double>(input), regime.c);
      p.l = static_cast<std::int64_t>(std::floor(v * (1.0 + kRoundingSlack)));
    } else {
      p.l = input;
      const double v = std::pow(static_cast<double>(input), 1.0 / regime.c) / regime.A;
      p.k = static_cast<std::int64_t>(std::ceil(v * (1.0 - kRoundingSlack)));
    }
    const bool bad = input < 1 || p.k < 1 || p.l < 1 ||
                     (factory_size && p.k > *factory_size * p.l);
    if (bad) {
      if (!offending.empty()) offending += ",";
      offending += std::to_string(p.k);
      continue;
    }
    points.push_back(p);
  }
  if (!offending.empty()) {
    fail(ErrorCode::InvalidPoint, "invalid regime points at k=" + offending);
  }

  for (auto& p : points) {
    p.p_miss = factory_size ? p_miss_exact({*factory_size, p.l, p.k}).to_double()
                            : p_miss_limit(p.l, p.k);
  }
  return points;
}

}  // namespace gtank
