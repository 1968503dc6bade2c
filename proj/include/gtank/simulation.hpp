#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gtank/layout.hpp"
#include "gtank/random.hpp"
#include "gtank/sample.hpp"

namespace gtank {

/// Uniform k-subset of the layout's serials, sorted. Partial Fisher-Yates
/// over the virtual index space [0, N_tot); T is never materialised.
/// Throws Oversample when k > N_tot and InvalidRange when k < 1.
Sample draw_sample(const FactoryLayout& layout, std::int64_t k, CounterStream& stream);

enum class SimEstimator { Mfp, MfpMinUnknown, FixedGap, FixedGapK1, Gtp, GtpUm };

std::string_view to_string(SimEstimator estimator) noexcept;

/// Accepts the canonical names (MFP, MFP_MIN_UNKNOWN, ...) case-insensitively,
/// with '-' or '_' as separator. Throws InvalidConfig.
SimEstimator parse_sim_estimator(std::string_view name);

struct SimulationConfig {
  std::string config_id = "config";
  FactoryLayout layout = build_layout({1}, {});
  SimEstimator estimator = SimEstimator::Gtp;
  std::vector<std::int64_t> k_values;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;

  /// Throws InvalidConfig when an invariant fails.
  void validate() const;

  /// N_tot for the MFP and GTP families, the common factory size for fixed-gap.
  std::int64_t target() const;
};

struct SimulationRow {
  std::string config_id;
  std::int64_t k = 0;
  std::int64_t trials = 0;
  std::int64_t excluded = 0;  // trials whose estimator raised an Error
  double mean_estimate = 0.0;
  double bias = 0.0;
  double mse = 0.0;
  double mse_normalized = 0.0;  // mse / target^2
  std::int64_t target = 0;
};

struct SimulationReport {
  std::vector<SimulationRow> rows;  // sorted by k
  std::uint64_t seed = 0;
  std::string config_echo;  // JSON text of the configuration
};

/// Monte Carlo MSE for every k in the config. Results depend only on
/// (config, seed): `threads` changes wall time, never output.
SimulationReport run_mse(const SimulationConfig& config, unsigned threads = 1);

/// Exact header of the results CSV.
inline constexpr std::string_view kSimulationCsvHeader =
    "config_id,k,trials,excluded,mean_estimate,bias,mse,mse_normalized";

void write_simulation_csv(std::ostream& out, const std::vector<SimulationRow>& rows);

/// Parses a single configuration object or {"configs": [...]}.
std::vector<SimulationConfig> parse_simulation_configs(std::string_view json_text);

std::string config_to_json(const SimulationConfig& config);

}  // namespace gtank
