#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "gtank/combinatorics.hpp"
#include "gtank/error.hpp"
#include "gtank/fixed_gap.hpp"
#include "gtank/layout.hpp"
#include "gtank/mfp.hpp"
#include "gtank/miss_probability.hpp"
#include "gtank/oracle.hpp"
#include "gtank/simulation.hpp"
#include "gtank/tank_estimators.hpp"

namespace py = pybind11;
using namespace gtank;

namespace {

py::object to_py_int(const BigInt& v) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py_int(r.numerator()), to_py_int(r.denominator()));
}

template <typename T>
py::tuple sides_tuple(const Sides<T>& s) {
  if constexpr (std::is_same_v<T, Rational>) {
    return py::make_tuple(to_fraction(s.lhs), to_fraction(s.rhs));
  } else {
    return py::make_tuple(to_py_int(s.lhs), to_py_int(s.rhs));
  }
}

py::dict estimate_dict(const Estimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["method"] = std::string(to_string(e.method));
  if (const auto* split = std::get_if<MfpSplit>(&e.diagnostics)) {
    py::list subs;
    for (const auto& s : split->sub_samples) {
      subs.append(std::vector<Serial>(s.serials().begin(), s.serials().end()));
    }
    d["sub_samples"] = subs;
    d["good_indices"] = split->good_indices;
    d["bad_indices"] = split->bad_indices;
    d["chosen_gap_positions"] = split->chosen_gap_positions;
    d["sub_estimates"] = split->sub_estimates;
    d["first_routed_to_bad"] = split->first_routed_to_bad;
  } else if (const auto* fg = std::get_if<FixedGapDiagnostics>(&e.diagnostics)) {
    d["clamped_value"] = fg->clamped_value;
  }
  return d;
}

Sample sample_of(std::vector<Serial> serials) { return Sample::from_unsorted(std::move(serials)); }

}  // namespace

PYBIND11_MODULE(_gtank, m) {
  m.doc() = "German tank problem estimators and simulation harness";

  static py::exception<Error> error(m, "GtankError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("binomial", [](std::uint64_t n, std::uint64_t k) { return to_py_int(binomial(n, k)); });
  m.def("hockey_stick_sides", [](std::int64_t n, std::int64_t r) { return sides_tuple(hockey_stick_sides(n, r)); });
  m.def("identity_I_sides", [](std::int64_t N, std::int64_t k, std::int64_t b) { return sides_tuple(identity_I_sides(N, k, b)); });
  m.def("identity_II_sides", [](std::int64_t N, std::int64_t k, std::int64_t b) { return sides_tuple(identity_II_sides(N, k, b)); });
  m.def("identity_III_sides", [](std::int64_t a, std::int64_t b, std::int64_t k) { return sides_tuple(identity_III_sides(a, b, k)); });

  m.def("gtp_estimate", [](std::vector<Serial> s) { return estimate_dict(gtp_estimate(sample_of(std::move(s)))); },
        py::arg("serials"));
  m.def("gtp_um_estimate", [](std::vector<Serial> s) { return estimate_dict(gtp_um_estimate(sample_of(std::move(s)))); },
        py::arg("serials"));
  m.def("spread_pmf", [](std::int64_t N, std::int64_t k, std::int64_t s) { return to_fraction(spread_pmf(N, k, s)); });
  m.def("spread_moments", [](std::int64_t N, std::int64_t k) {
    const auto mom = spread_moments(N, k);
    return py::make_tuple(to_fraction(mom.mean), to_fraction(mom.second_moment), to_fraction(mom.variance));
  });
  m.def("gtp_variance", [](std::int64_t N, std::int64_t k) { return to_fraction(gtp_variance(N, k)); });
  m.def("gtp_um_variance", [](std::int64_t N, std::int64_t k) { return to_fraction(gtp_um_variance(N, k)); });

  m.def("p_miss_exact", [](std::int64_t N, std::int64_t l, std::int64_t k) { return to_fraction(p_miss_exact({N, l, k})); },
        py::arg("factory_size"), py::arg("factories"), py::arg("samples"));
  m.def("p_miss_limit", &p_miss_limit, py::arg("factories"), py::arg("samples"));
  m.def("q_expectation", &q_expectation, py::arg("factories"), py::arg("samples"));
  m.def("q_variance", &q_variance, py::arg("factories"), py::arg("samples"));
  m.def(
      "regime_curve",
      [](double A, double c, std::vector<std::int64_t> inputs, std::optional<std::int64_t> factory_size,
         bool k_of_l) {
        py::list out;
        for (const auto& p : regime_curve({A, c}, k_of_l ? RegimeMapping::KOfL : RegimeMapping::LOfK,
                                          inputs, factory_size)) {
          out.append(py::make_tuple(p.k, p.l, p.p_miss));
        }
        return out;
      },
      py::arg("A"), py::arg("exponent"), py::arg("inputs"), py::arg("factory_size") = py::none(),
      py::arg("k_of_l") = false);

  m.def("mfp_estimate",
        [](std::vector<Serial> s, std::int64_t l, bool lower_known) {
          return estimate_dict(mfp_estimate(sample_of(std::move(s)), l, lower_known));
        },
        py::arg("serials"), py::arg("factories"), py::arg("lower_known") = true);

  m.def("max_pmf", [](std::int64_t l, std::int64_t G, std::int64_t N, std::int64_t k, Serial m) {
    return to_fraction(max_pmf({l, G, N}, k, m));
  }, py::arg("factories"), py::arg("gap"), py::arg("factory_size"), py::arg("k"), py::arg("serial"));
  m.def("expected_h_exact", [](std::int64_t l, std::int64_t G, std::int64_t N, std::int64_t k) {
    return to_fraction(expected_h_exact({l, G, N}, k));
  }, py::arg("factories"), py::arg("gap"), py::arg("factory_size"), py::arg("k"));
  m.def("expected_h_approx", [](std::int64_t l, std::int64_t G, std::int64_t N, std::int64_t k) {
    const auto h = expected_h_approx({l, G, N}, k);
    return py::make_tuple(h.value, h.out_of_regime);
  }, py::arg("factories"), py::arg("gap"), py::arg("factory_size"), py::arg("k"));
  m.def("fixed_gap_estimate_k1", [](std::int64_t l, std::int64_t G, Serial M) {
    return estimate_dict(fixed_gap_estimate_k1(l, G, M));
  }, py::arg("factories"), py::arg("gap"), py::arg("max_serial"));
  m.def("fixed_gap_estimate", [](std::int64_t l, std::int64_t G, std::int64_t k, Serial M) {
    return estimate_dict(fixed_gap_estimate(l, G, k, M));
  }, py::arg("factories"), py::arg("gap"), py::arg("k"), py::arg("max_serial"));

  m.def(
      "run_mse",
      [](const std::string& config_json, std::optional<std::uint64_t> seed, unsigned threads) {
        py::list rows;
        for (auto& c : parse_simulation_configs(config_json)) {
          if (seed) c.seed = *seed;
          SimulationReport report;
          {
            py::gil_scoped_release release;
            report = run_mse(c, threads);
          }
          for (const auto& r : report.rows) {
            py::dict d;
            d["config_id"] = r.config_id;
            d["k"] = r.k;
            d["trials"] = r.trials;
            d["excluded"] = r.excluded;
            d["mean_estimate"] = r.mean_estimate;
            d["bias"] = r.bias;
            d["mse"] = r.mse;
            d["mse_normalized"] = r.mse_normalized;
            rows.append(d);
          }
        }
        return rows;
      },
      py::arg("config_json"), py::arg("seed") = py::none(), py::arg("threads") = 1);

  m.def(
      "enumerate_oracle",
      [](std::vector<std::int64_t> sizes, std::vector<std::int64_t> gaps, std::int64_t k,
         const std::string& statistic, std::int64_t first_start) -> py::tuple {
        const FactoryLayout layout = build_layout(std::move(sizes), std::move(gaps), first_start);
        if (statistic_is_exact(statistic)) {
          const auto mom = enumerate_oracle(layout, k, named_exact_statistic(statistic, layout));
          return py::make_tuple(to_fraction(mom.mean), to_fraction(mom.variance));
        }
        const auto mom = enumerate_oracle_real(layout, k, named_real_statistic(statistic, layout));
        return py::make_tuple(mom.mean, mom.variance);
      },
      py::arg("sizes"), py::arg("gaps"), py::arg("k"), py::arg("statistic"), py::arg("first_start") = 1);
}
