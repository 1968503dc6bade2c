#include "gtank/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "gtank/error.hpp"
#include "gtank/fixed_gap.hpp"
#include "gtank/mfp.hpp"
#include "gtank/tank_estimators.hpp"

namespace gtank {

using json = nlohmann::json;

Sample draw_sample(const FactoryLayout& layout, std::int64_t k, CounterStream& stream) {
  const std::int64_t total = layout.total();
  if (k < 1) fail(ErrorCode::InvalidRange, "sample size must be >= 1");
  if (k > total) {
    fail(ErrorCode::Oversample, "cannot draw " + std::to_string(k) + " distinct serials from " +
                                    std::to_string(total));
  }
  // Sparse permutation: positions absent from the map hold their own index.
  std::unordered_map<std::int64_t, std::int64_t> swapped;
  swapped.reserve(static_cast<std::size_t>(2 * k));
  auto at = [&](std::int64_t i) {
    const auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<Serial> serials;
  serials.reserve(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) {
    const std::int64_t j = i + static_cast<std::int64_t>(stream.below(static_cast<std::uint64_t>(total - i)));
    const std::int64_t picked = at(j);
    swapped[j] = at(i);
    serials.push_back(layout.serial_at(picked));
  }
  std::sort(serials.begin(), serials.end());
  return Sample::from_sorted(std::move(serials));
}

std::string_view to_string(SimEstimator estimator) noexcept {
  switch (estimator) {
    case SimEstimator::Mfp: return "MFP";
    case SimEstimator::MfpMinUnknown: return "MFP_MIN_UNKNOWN";
    case SimEstimator::FixedGap: return "FIXED_GAP";
    case SimEstimator::FixedGapK1: return "FIXED_GAP_K1";
    case SimEstimator::Gtp: return "GTP";
    case SimEstimator::GtpUm: return "GTP_UM";
  }
  return "UNKNOWN";
}

SimEstimator parse_sim_estimator(std::string_view name) {
  std::string canon;
  for (const char c : name) canon += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto e : {SimEstimator::Mfp, SimEstimator::MfpMinUnknown, SimEstimator::FixedGap,
                       SimEstimator::FixedGapK1, SimEstimator::Gtp, SimEstimator::GtpUm}) {
    if (canon == to_string(e)) return e;
  }
  fail(ErrorCode::InvalidConfig, "unknown estimator '" + std::string(name) + "'");
}

namespace {

bool is_fixed_gap(SimEstimator e) {
  return e == SimEstimator::FixedGap || e == SimEstimator::FixedGapK1;
}

bool is_mfp(SimEstimator e) { return e == SimEstimator::Mfp || e == SimEstimator::MfpMinUnknown; }

double apply_estimator(const SimulationConfig& config, const Sample& sample) {
  const FactoryLayout& layout = config.layout;
  switch (config.estimator) {
    case SimEstimator::Mfp: return mfp_estimate(sample, layout.factories(), true).value;
    case SimEstimator::MfpMinUnknown: return mfp_estimate(sample, layout.factories(), false).value;
    case SimEstimator::Gtp: return gtp_estimate(sample).value;
    case SimEstimator::GtpUm: return gtp_um_estimate(sample).value;
    case SimEstimator::FixedGap: {
      const std::int64_t gap = layout.gaps().empty() ? 0 : layout.gaps().front();
      return fixed_gap_estimate(layout.factories(), gap, sample.size(), sample.max()).value;
    }
    case SimEstimator::FixedGapK1: {
      const std::int64_t gap = layout.gaps().empty() ? 0 : layout.gaps().front();
      return fixed_gap_estimate_k1(layout.factories(), gap, sample.max()).value;
    }
  }
  return 0.0;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

void SimulationConfig::validate() const {
  if (trials < 1) fail(ErrorCode::InvalidConfig, "trials must be >= 1");
  if (k_values.empty()) fail(ErrorCode::InvalidConfig, "no sample sizes configured");
  for (const auto k : k_values) {
    if (k < 1 || k > layout.total()) {
      fail(ErrorCode::InvalidConfig, "sample size " + std::to_string(k) + " outside [1, " +
                                         std::to_string(layout.total()) + "]");
    }
  }
  if (is_fixed_gap(estimator)) {
    if (!layout.is_uniform()) {
      fail(ErrorCode::InvalidConfig, "fixed-gap estimators need equal factory sizes and equal gaps");
    }
    if (layout.first_start() != 1) {
      fail(ErrorCode::InvalidConfig, "fixed-gap estimators assume serials start at 1");
    }
  }
  if (is_mfp(estimator) && layout.factories() < 2) {
    fail(ErrorCode::InvalidConfig, "MFP estimators need at least two factories");
  }
}

std::int64_t SimulationConfig::target() const {
  return is_fixed_gap(estimator) ? layout.sizes().front() : layout.total();
}

SimulationReport run_mse(const SimulationConfig& config, unsigned threads) {
  config.validate();
  std::vector<std::int64_t> ks = config.k_values;
  std::sort(ks.begin(), ks.end());
  threads = std::max(1u, threads);

  SimulationReport report;
  report.seed = config.seed;
  report.config_echo = config_to_json(config);
  const auto target = static_cast<double>(config.target());

  std::vector<std::optional<double>> results(static_cast<std::size_t>(config.trials));
  for (const auto k : ks) {
    auto work = [&](std::int64_t begin, std::int64_t end) {
      for (std::int64_t t = begin; t < end; ++t) {
        CounterStream stream(config.seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t));
        const Sample sample = draw_sample(config.layout, k, stream);
        try {
          results[static_cast<std::size_t>(t)] = apply_estimator(config, sample);
        } catch (const Error&) {
          results[static_cast<std::size_t>(t)].reset();
        }
      }
    };
    if (threads == 1) {
      work(0, config.trials);
    } else {
      std::vector<std::jthread> pool;
      const std::int64_t chunk = (config.trials + threads - 1) / threads;
      for (unsigned w = 0; w < threads; ++w) {
        const std::int64_t begin = std::min<std::int64_t>(config.trials, w * chunk);
        const std::int64_t end = std::min<std::int64_t>(config.trials, begin + chunk);
        if (begin < end) pool.emplace_back(work, begin, end);
      }
    }

    // Reduction in trial order keeps the sums independent of `threads`.
    SimulationRow row;
    row.config_id = config.config_id;
    row.k = k;
    row.trials = config.trials;
    row.target = config.target();
    double sum = 0.0, sum_sq_err = 0.0;
    std::int64_t used = 0;
    for (const auto& r : results) {
      if (!r) {
        ++row.excluded;
        continue;
      }
      sum += *r;
      sum_sq_err += (*r - target) * (*r - target);
      ++used;
    }
    const double n = static_cast<double>(used);
    row.mean_estimate = used ? sum / n : std::nan("");
    row.bias = row.mean_estimate - target;
    row.mse = used ? sum_sq_err / n : std::nan("");
    row.mse_normalized = row.mse / (target * target);
    report.rows.push_back(row);
  }
  return report;
}

void write_simulation_csv(std::ostream& out, const std::vector<SimulationRow>& rows) {
  out << kSimulationCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.config_id << ',' << r.k << ',' << r.trials << ',' << r.excluded << ','
        << format_double(r.mean_estimate) << ',' << format_double(r.bias) << ','
        << format_double(r.mse) << ',' << format_double(r.mse_normalized) << '\n';
  }
}

namespace {

SimulationConfig config_from_json(const json& j, std::size_t index) {
  auto require = [&](const char* key) -> const json& {
    if (!j.contains(key)) fail(ErrorCode::InvalidConfig, std::string("config is missing '") + key + "'");
    return j.at(key);
  };
  try {
    SimulationConfig c;
    c.config_id = j.value("config_id", index == 0 ? std::string("config") : "config" + std::to_string(index));
    const json& lay = require("layout");
    c.layout = build_layout(lay.at("sizes").get<std::vector<std::int64_t>>(),
                            lay.value("gaps", std::vector<std::int64_t>{}),
                            lay.value("first_start", std::int64_t{1}));
    c.estimator = parse_sim_estimator(require("estimator").get<std::string>());
    if (j.contains("k_values")) {
      c.k_values = j.at("k_values").get<std::vector<std::int64_t>>();
    } else if (j.contains("k_range")) {
      const json& r = j.at("k_range");
      const auto lo = r.at("min").get<std::int64_t>();
      const auto hi = r.at("max").get<std::int64_t>();
      const auto step = r.value("step", std::int64_t{1});
      if (step < 1) fail(ErrorCode::InvalidConfig, "k_range step must be >= 1");
      for (auto k = lo; k <= hi; k += step) c.k_values.push_back(k);
    } else {
      fail(ErrorCode::InvalidConfig, "config needs k_values or k_range");
    }
    c.trials = require("trials").get<std::int64_t>();
    c.seed = j.value("seed", std::uint64_t{0});
    return c;
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("malformed config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidConfig) throw;
    fail(ErrorCode::InvalidConfig, std::string("invalid layout: ") + e.what());
  }
}

}  // namespace

std::vector<SimulationConfig> parse_simulation_configs(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  std::vector<SimulationConfig> out;
  if (doc.is_object() && doc.contains("configs")) {
    std::size_t i = 0;
    for (const auto& item : doc.at("configs")) out.push_back(config_from_json(item, i++));
  } else if (doc.is_object()) {
    out.push_back(config_from_json(doc, 0));
  } else {
    fail(ErrorCode::InvalidConfig, "config must be a JSON object");
  }
  for (const auto& c : out) c.validate();
  return out;
}

std::string config_to_json(const SimulationConfig& c) {
  json lay{{"sizes", std::vector<std::int64_t>(c.layout.sizes().begin(), c.layout.sizes().end())},
           {"gaps", std::vector<std::int64_t>(c.layout.gaps().begin(), c.layout.gaps().end())},
           {"first_start", c.layout.first_start()}};
  json j{{"config_id", c.config_id},
         {"layout", lay},
         {"estimator", std::string(to_string(c.estimator))},
         {"k_values", c.k_values},
         {"trials", c.trials},
         {"seed", c.seed}};
  return j.dump();
}

}  // namespace gtank
