#pragma once

#include <cstdint>

#include "gtank/estimate.hpp"
#include "gtank/rational.hpp"
#include "gtank/sample.hpp"

namespace gtank {

/// Classical estimator M(1 + 1/k) - 1. Valid for k = 1 (gives 2M - 1).
Estimate gtp_estimate(const Sample& sample);

/// Unknown-minimum estimator S(1 + 2/(k-1)) - 1. Throws InsufficientSample for k < 2.
Estimate gtp_um_estimate(const Sample& sample);

// Exact rational versions of the two estimators, for enumeration oracles.
Rational gtp_value_exact(const Sample& sample);
Rational gtp_um_value_exact(const Sample& sample);

/// P(S = s) for the spread of a uniform k-subset of {1..N}; 2 <= k <= N.
Rational spread_pmf(std::int64_t N, std::int64_t k, std::int64_t s);

struct SpreadMoments {
  Rational mean;
  Rational second_moment;
  Rational variance;
};

/// Closed-form E[S], E[S^2] and Var(S); 2 <= k <= N.
SpreadMoments spread_moments(std::int64_t N, std::int64_t k);

/// (N+1)(N-k) / (k(k+2)); 1 <= k <= N.
Rational gtp_variance(std::int64_t N, std::int64_t k);

/// 2(N+1)(N-k) / ((k-1)(k+2)); 2 <= k <= N.
Rational gtp_um_variance(std::int64_t N, std::int64_t k);

}  // namespace gtank
