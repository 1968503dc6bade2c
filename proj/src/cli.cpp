#include "gtank/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gtank/combinatorics.hpp"
#include "gtank/error.hpp"
#include "gtank/fixed_gap.hpp"
#include "gtank/layout.hpp"
#include "gtank/mfp.hpp"
#include "gtank/miss_probability.hpp"
#include "gtank/oracle.hpp"
#include "gtank/simulation.hpp"
#include "gtank/tank_estimators.hpp"

namespace gtank::cli {

namespace {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

/// Validation failure attributable to a specific flag.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json rational_json(const Rational& r) {
  return {{"exact", r.to_string()},
          {"num", r.numerator().get_str()},
          {"den", r.denominator().get_str()},
          {"decimal", r.to_double()}};
}

json document() { return json{{"schema", kSchemaVersion}}; }

std::vector<Serial> parse_serial_list(const std::string& text, const std::string& flag) {
  std::vector<Serial> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw FlagError(flag + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

std::vector<Serial> read_serials_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FlagError("--serials-file: cannot open '" + path + "'");
  std::vector<Serial> out;
  std::string line;
  while (std::getline(in, line)) {
    auto parsed = parse_serial_list(line, "--serials-file");
    out.insert(out.end(), parsed.begin(), parsed.end());
  }
  return out;
}

struct SerialInput {
  std::string inline_list;
  std::string file;

  void attach(CLI::App* cmd) {
    auto* a = cmd->add_option("--serials", inline_list, "Comma-separated serial numbers");
    auto* b = cmd->add_option("--serials-file", file, "File with one serial number per line");
    a->excludes(b);
  }

  Sample load() const {
    std::vector<Serial> raw;
    std::string flag = "--serials";
    if (!file.empty()) {
      raw = read_serials_file(file);
      flag = "--serials-file";
    } else if (!inline_list.empty()) {
      raw = parse_serial_list(inline_list, flag);
    } else {
      throw FlagError("--serials: one of --serials or --serials-file is required");
    }
    try {
      return Sample::from_unsorted(std::move(raw));
    } catch (const Error& e) {
      throw FlagError(flag + ": " + e.what());
    }
  }
};

json sample_summary(const Sample& s) {
  return {{"k", s.size()}, {"max", s.max()}, {"min", s.min()}, {"spread", s.spread()}};
}

json mfp_diagnostics_json(const MfpSplit& split) {
  json subs = json::array();
  for (const auto& sub : split.sub_samples) {
    subs.push_back(std::vector<Serial>(sub.serials().begin(), sub.serials().end()));
  }
  return {{"sub_samples", subs},
          {"good_indices", split.good_indices},
          {"bad_indices", split.bad_indices},
          {"chosen_gap_positions", split.chosen_gap_positions},
          {"sub_estimates", split.sub_estimates},
          {"n_good_sum", split.n_good_sum},
          {"k_good_sum", split.k_good_sum},
          {"lower_known", split.lower_known},
          {"first_routed_to_bad", split.first_routed_to_bad}};
}

json estimate_json(const Estimate& e, const Sample& s) {
  json doc = document();
  doc["method"] = std::string(to_string(e.method));
  doc["value"] = e.value;
  doc["sample"] = sample_summary(s);
  if (const auto* split = std::get_if<MfpSplit>(&e.diagnostics)) {
    doc["diagnostics"] = mfp_diagnostics_json(*split);
  } else if (const auto* fg = std::get_if<FixedGapDiagnostics>(&e.diagnostics)) {
    json d{{"observed_max", fg->observed_max}, {"k", fg->k}, {"clamped_value", fg->clamped_value}};
    if (fg->inversion_bracket) {
      d["inversion_bracket"] = {fg->inversion_bracket->first, fg->inversion_bracket->second};
    }
    doc["diagnostics"] = d;
  }
  return doc;
}

std::string read_file(const std::string& path, const std::string& flag) {
  std::ifstream in(path);
  if (!in) throw FlagError(flag + ": cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FactoryLayout parse_layout_arg(const std::string& arg) {
  const std::string text = !arg.empty() && arg.front() == '{' ? arg : read_file(arg, "--layout");
  try {
    const json j = json::parse(text);
    const json& lay = j.contains("layout") ? j.at("layout") : j;
    return build_layout(lay.at("sizes").get<std::vector<std::int64_t>>(),
                        lay.value("gaps", std::vector<std::int64_t>{}),
                        lay.value("first_start", std::int64_t{1}));
  } catch (const json::exception& e) {
    throw FlagError(std::string("--layout: ") + e.what());
  } catch (const Error& e) {
    throw FlagError(std::string("--layout: ") + e.what());
  }
}

void emit(std::ostream& out, const json& doc) { out << doc.dump() << '\n'; }

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"German tank problem estimators, miss probabilities and Monte Carlo harness", "gtank"};
  app.require_subcommand(1);

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Estimate production from observed serials");
  estimate->require_subcommand(1);

  SerialInput gtp_in, gtp_um_in, mfp_in, fg_in;
  auto* est_gtp = estimate->add_subcommand("gtp", "Classical estimator M(1 + 1/k) - 1");
  gtp_in.attach(est_gtp);
  auto* est_gtp_um = estimate->add_subcommand("gtp-um", "Unknown-minimum estimator S(1 + 2/(k-1)) - 1");
  gtp_um_in.attach(est_gtp_um);

  auto* est_mfp = estimate->add_subcommand("mfp", "Multiple-factories total production");
  mfp_in.attach(est_mfp);
  std::int64_t mfp_factories = 0;
  bool mfp_min_unknown = false;
  est_mfp->add_option("--factories", mfp_factories, "Number of factories l")->required();
  est_mfp->add_flag("--min-unknown", mfp_min_unknown, "First factory's minimum serial is unknown");

  auto* est_fg = estimate->add_subcommand("fixed-gap", "Equal factories with a fixed, known gap");
  fg_in.attach(est_fg);
  std::int64_t fg_factories = 0, fg_gap = 0;
  bool fg_invert = false;
  est_fg->add_option("--factories", fg_factories, "Number of factories l")->required();
  est_fg->add_option("--gap", fg_gap, "Gap G between factories")->required();
  est_fg->add_flag("--invert-exact", fg_invert, "Invert the exact expected maximum numerically");

  // prob
  auto* prob = app.add_subcommand("prob", "Probability of missing a factory");
  prob->require_subcommand(1);
  auto* miss = prob->add_subcommand("miss", "P(at least one factory unsampled)");
  std::optional<std::int64_t> miss_n;
  std::int64_t miss_l = 0, miss_k = 0;
  bool miss_limit = false;
  miss->add_option("--factory-size", miss_n, "Serials per factory N");
  miss->add_option("--factories", miss_l, "Number of factories l")->required();
  miss->add_option("--samples", miss_k, "Number of draws k")->required();
  miss->add_flag("--limit", miss_limit, "Report the N -> infinity limit");

  auto* curve = prob->add_subcommand("curve", "Miss probability along l = floor(A k^c)");
  double curve_a = 1.0, curve_c = 1.0;
  std::int64_t curve_kmin = 1, curve_kmax = 1;
  std::optional<std::int64_t> curve_n;
  bool curve_limit = false;
  std::string curve_out, curve_mapping = "l-of-k";
  curve->add_option("--A", curve_a, "Growth constant A > 0")->required();
  curve->add_option("--exponent", curve_c, "Growth exponent c > 0")->required();
  curve->add_option("--k-min", curve_kmin, "First input value")->required();
  curve->add_option("--k-max", curve_kmax, "Last input value")->required();
  auto* curve_n_opt = curve->add_option("--factory-size", curve_n, "Serials per factory N");
  auto* curve_limit_opt = curve->add_flag("--limit", curve_limit, "Use the N -> infinity limit");
  curve_n_opt->excludes(curve_limit_opt);
  curve->add_option("--mapping", curve_mapping, "l-of-k (inputs are k) or k-of-l (inputs are l)")
      ->check(CLI::IsMember({"l-of-k", "k-of-l"}));
  curve->add_option("--out", curve_out, "Output CSV path")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo MSE sweep from a JSON config");
  std::string sim_config, sim_out;
  std::optional<std::uint64_t> sim_seed;
  unsigned sim_threads = 1;
  simulate->add_option("--config", sim_config, "Config JSON path")->required();
  simulate->add_option("--out", sim_out, "Output CSV path")->required();
  simulate->add_option("--seed", sim_seed, "Override the config seed");
  simulate->add_option("--threads", sim_threads, "Worker threads (output does not depend on it)")
      ->check(CLI::Range(1u, 1024u));

  // verify
  auto* verify = app.add_subcommand("verify", "Evaluate binomial identities exactly");
  verify->require_subcommand(1);
  auto* identities = verify->add_subcommand("identities", "Check identities I, II, III and hockey stick");
  std::int64_t max_n = 30, max_ab = 8, max_k3 = 12, max_hockey = 60;
  identities->add_option("--max-n", max_n, "Largest N for identities I and II")->check(CLI::Range(1, 400));
  identities->add_option("--max-ab", max_ab, "Largest a, b for identity III")->check(CLI::Range(0, 100));
  identities->add_option("--max-k", max_k3, "Largest k for identity III")->check(CLI::Range(0, 200));
  identities->add_option("--max-hockey", max_hockey, "Largest n for the hockey stick")->check(CLI::Range(0, 2000));

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustive mean and variance of a statistic");
  std::string oracle_layout, oracle_stat;
  std::int64_t oracle_k = 0;
  std::uint64_t oracle_budget = kDefaultOracleBudget;
  oracle->add_option("--layout", oracle_layout, "Layout as inline JSON or a JSON file path")->required();
  oracle->add_option("--k", oracle_k, "Sample size")->required();
  oracle->add_option("--statistic", oracle_stat, "Statistic name")
      ->required()
      ->check(CLI::IsMember(statistic_names()));
  oracle->add_option("--budget", oracle_budget, "Maximum number of subsets to enumerate");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (est_gtp->parsed()) {
      const Sample s = gtp_in.load();
      emit(out, estimate_json(gtp_estimate(s), s));
    } else if (est_gtp_um->parsed()) {
      const Sample s = gtp_um_in.load();
      if (s.size() < 2) throw FlagError("--serials: GTP-UM needs at least two serials");
      emit(out, estimate_json(gtp_um_estimate(s), s));
    } else if (est_mfp->parsed()) {
      const Sample s = mfp_in.load();
      if (mfp_factories < 2) throw FlagError("--factories: must be >= 2");
      if (s.size() < mfp_factories) {
        throw FlagError("--factories: " + std::to_string(mfp_factories) + " factories need at least as many serials");
      }
      emit(out, estimate_json(mfp_estimate(s, mfp_factories, !mfp_min_unknown), s));
    } else if (est_fg->parsed()) {
      const Sample s = fg_in.load();
      if (fg_factories < 1) throw FlagError("--factories: must be >= 1");
      if (fg_gap < 0) throw FlagError("--gap: must be >= 0");
      Estimate e = fg_invert ? fixed_gap_invert_exact(fg_factories, fg_gap, s.size(), s.max())
                   : s.size() == 1 ? fixed_gap_estimate_k1(fg_factories, fg_gap, s.max())
                                   : fixed_gap_estimate(fg_factories, fg_gap, s.size(), s.max());
      emit(out, estimate_json(e, s));
    } else if (miss->parsed()) {
      if (miss_l < 1) throw FlagError("--factories: must be >= 1");
      if (miss_k < 1) throw FlagError("--samples: must be >= 1");
      if (!miss_n && !miss_limit) throw FlagError("--factory-size: required unless --limit is given");
      json doc = document();
      doc["factories"] = miss_l;
      doc["samples"] = miss_k;
      if (miss_n) {
        if (*miss_n < 1) throw FlagError("--factory-size: must be >= 1");
        if (miss_k > *miss_n * miss_l) throw FlagError("--samples: cannot exceed factory-size * factories");
        doc["factory_size"] = *miss_n;
        doc.update(rational_json(p_miss_exact({*miss_n, miss_l, miss_k})));
      }
      if (miss_limit) doc["limit"] = rational_json(p_miss_limit_exact(miss_l, miss_k));
      emit(out, doc);
    } else if (curve->parsed()) {
      if (curve_kmin < 1 || curve_kmax < curve_kmin) throw FlagError("--k-min/--k-max: need 1 <= k-min <= k-max");
      if (!curve_n && !curve_limit) throw FlagError("--factory-size: required unless --limit is given");
      std::vector<std::int64_t> inputs;
      for (auto k = curve_kmin; k <= curve_kmax; ++k) inputs.push_back(k);
      const auto mapping = curve_mapping == "k-of-l" ? RegimeMapping::KOfL : RegimeMapping::LOfK;
      const auto points = regime_curve({curve_a, curve_c}, mapping, inputs,
                                       curve_limit ? std::nullopt : curve_n);
      std::ofstream csv(curve_out);
      if (!csv) throw FlagError("--out: cannot write '" + curve_out + "'");
      csv << "k,l,p_miss\n";
      csv.precision(17);
      for (const auto& p : points) csv << p.k << ',' << p.l << ',' << p.p_miss << '\n';
      json doc = document();
      doc["points"] = points.size();
      doc["out"] = curve_out;
      emit(out, doc);
    } else if (simulate->parsed()) {
      auto configs = parse_simulation_configs(read_file(sim_config, "--config"));
      std::vector<SimulationRow> rows;
      json seeds = json::array();
      for (auto& c : configs) {
        if (sim_seed) c.seed = *sim_seed;
        const auto report = run_mse(c, sim_threads);
        rows.insert(rows.end(), report.rows.begin(), report.rows.end());
        seeds.push_back({{"config_id", c.config_id}, {"seed", report.seed}});
      }
      std::ofstream csv(sim_out);
      if (!csv) throw FlagError("--out: cannot write '" + sim_out + "'");
      write_simulation_csv(csv, rows);
      json doc = document();
      doc["rows"] = rows.size();
      doc["out"] = sim_out;
      doc["seeds"] = seeds;
      emit(out, doc);
    } else if (identities->parsed()) {
      std::int64_t checked_12 = 0, checked_3 = 0, checked_hockey = 0, failures = 0;
      for (std::int64_t N = 1; N <= max_n; ++N) {
        for (std::int64_t k = 1; k <= N; ++k) {
          for (std::int64_t b = 1; b <= k; ++b) {
            if (!identity_I_sides(N, k, b).equal()) ++failures;
            if (!identity_II_sides(N, k, b).equal()) ++failures;
            ++checked_12;
          }
        }
      }
      for (std::int64_t a = 0; a <= max_ab; ++a) {
        for (std::int64_t b = 0; b <= max_ab; ++b) {
          for (std::int64_t k = 0; k <= max_k3; ++k) {
            if (!identity_III_sides(a, b, k).equal()) ++failures;
            ++checked_3;
          }
        }
      }
      for (std::int64_t n = 0; n <= max_hockey; ++n) {
        for (std::int64_t r = 0; r <= n; ++r) {
          if (!hockey_stick_sides(n, r).equal()) ++failures;
          ++checked_hockey;
        }
      }
      json doc = document();
      doc["identity_I_II_triples"] = checked_12;
      doc["identity_III_triples"] = checked_3;
      doc["hockey_stick_pairs"] = checked_hockey;
      doc["failures"] = failures;
      doc["summary"] = "checked " + std::to_string(checked_12) + " (N,k,b) triples for identities I and II, " +
                       std::to_string(checked_3) + " (a,b,k) triples for identity III, " +
                       std::to_string(checked_hockey) + " hockey-stick pairs; " +
                       std::to_string(failures) + " failures";
      emit(out, doc);
      return failures == 0 ? kExitOk : kExitFailure;
    } else if (oracle->parsed()) {
      const FactoryLayout layout = parse_layout_arg(oracle_layout);
      if (oracle_k < 1 || oracle_k > layout.total()) {
        throw FlagError("--k: must lie in [1, " + std::to_string(layout.total()) + "]");
      }
      json doc = document();
      doc["statistic"] = oracle_stat;
      doc["k"] = oracle_k;
      if (statistic_is_exact(oracle_stat)) {
        const auto m = enumerate_oracle(layout, oracle_k, named_exact_statistic(oracle_stat, layout), oracle_budget);
        doc["subsets"] = m.subsets.get_str();
        doc["mean"] = rational_json(m.mean);
        doc["variance"] = rational_json(m.variance);
      } else {
        const auto m = enumerate_oracle_real(layout, oracle_k, named_real_statistic(oracle_stat, layout), oracle_budget);
        doc["subsets"] = m.subsets.get_str();
        doc["mean"] = {{"decimal", m.mean}};
        doc["variance"] = {{"decimal", m.variance}};
      }
      emit(out, doc);
    }
  } catch (const FlagError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.is_budget_or_regime() ? kExitBudget : kExitInvalidInput;
  }
  return kExitOk;
}

}  // namespace gtank::cli
