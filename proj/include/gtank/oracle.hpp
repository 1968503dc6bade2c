#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gtank/layout.hpp"
#include "gtank/rational.hpp"
#include "gtank/sample.hpp"

namespace gtank {

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

template <typename T>
struct OracleMoments {
  BigInt subsets;
  T mean;
  T variance;
};

using ExactStatistic = std::function<Rational(const Sample&)>;
using RealStatistic = std::function<double(const Sample&)>;

/// Number of size-k subsets of the layout, C(N_tot, k).
BigInt subset_count(const FactoryLayout& layout, std::int64_t k);

/// Visits every size-k subset of the layout's serials exactly once, in
/// lexicographic order. Throws BudgetExceeded (with the subset count) when
/// C(N_tot, k) exceeds `budget`.
void for_each_subset(const FactoryLayout& layout, std::int64_t k,
                     const std::function<void(const Sample&)>& visit,
                     std::uint64_t budget = kDefaultOracleBudget);

/// Exact mean and variance of a rational-valued statistic over all subsets.
OracleMoments<Rational> enumerate_oracle(const FactoryLayout& layout, std::int64_t k,
                                         const ExactStatistic& statistic,
                                         std::uint64_t budget = kDefaultOracleBudget);

/// Floating-point counterpart (Welford accumulation in enumeration order).
OracleMoments<double> enumerate_oracle_real(const FactoryLayout& layout, std::int64_t k,
                                            const RealStatistic& statistic,
                                            std::uint64_t budget = kDefaultOracleBudget);

/// Named statistics for the CLI and bindings. Exact: gtp, gtp-um, max, min,
/// spread, miss, empty-fraction, fixed-gap, fixed-gap-k1. Real only: mfp,
/// mfp-min-unknown.
bool statistic_is_exact(std::string_view name);
ExactStatistic named_exact_statistic(std::string_view name, const FactoryLayout& layout);
RealStatistic named_real_statistic(std::string_view name, const FactoryLayout& layout);
std::vector<std::string> statistic_names();

}  // namespace gtank
