#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gtank/rational.hpp"

namespace gtank {

/// k draws without replacement from l factories of N serials each.
struct MissProbabilityQuery {
  std::int64_t factory_size = 1;
  std::int64_t factories = 1;
  std::int64_t samples = 1;
};

/// Probability that at least one factory receives no draw, by inclusion-exclusion.
Rational p_miss_exact(const MissProbabilityQuery& query);

/// N -> infinity limit of p_miss_exact (i.i.d. uniform factory assignment).
double p_miss_limit(std::int64_t factories, std::int64_t samples);

/// Same limit, kept exact: sum (-1)^{i+1} C(l,i) ((l-i)/l)^k.
Rational p_miss_limit_exact(std::int64_t factories, std::int64_t samples);

/// Expected fraction of empty factories in the limit, (1 - 1/l)^k.
double q_expectation(std::int64_t factories, std::int64_t samples);

/// Variance of the empty-factory fraction in the limit; requires l >= 2.
double q_variance(std::int64_t factories, std::int64_t samples);

/// Polynomial growth l = floor(A k^c).
struct GrowthRegime {
  double A = 1.0;
  double c = 1.0;
};

enum class RegimeMapping {
  LOfK,  // inputs are k; l = floor(A k^c)
  KOfL,  // inputs are l; k = ceil((1/A) l^(1/c))
};

struct CurvePoint {
  std::int64_t k = 0;
  std::int64_t l = 0;
  double p_miss = 0.0;
};

/// Evaluates the miss probability along a growth regime. `factory_size`
/// empty means the N -> infinity limit. Output order follows `inputs`.
/// Throws InvalidPoint naming every offending input.
std::vector<CurvePoint> regime_curve(const GrowthRegime& regime, RegimeMapping mapping,
                                     std::span<const std::int64_t> inputs,
                                     std::optional<std::int64_t> factory_size);

}  // namespace gtank
