#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tailstat/errors.hpp"
#include "tailstat/gpd.hpp"
#include "tailstat/mc.hpp"
#include "tailstat/osd.hpp"
#include "tailstat/risk.hpp"
#include "tailstat/sample.hpp"
#include "tailstat/special.hpp"
#include "tailstat/tail_stat.hpp"
#include "tailstat/threshold.hpp"

namespace py = pybind11;
namespace ts = tailstat;

namespace {

ts::OrderedUnitSample make_unit(const std::vector<double>& values) {
  return ts::OrderedUnitSample::from_unsorted(values);
}

ts::StatSpec make_spec(const std::string& side, double stress) {
  ts::StatSpec spec;
  if (side == "lower") {
    spec.side = ts::TailSide::lower;
  } else if (side == "upper") {
    spec.side = ts::TailSide::upper;
  } else if (side == "both") {
    spec.side = ts::TailSide::both;
  } else {
    throw std::invalid_argument("side must be 'lower', 'upper', or 'both'");
  }
  spec.stress = stress;
  ts::validate_spec(spec);
  return spec;
}

std::string side_name(ts::TailSide side) {
  switch (side) {
    case ts::TailSide::lower: return "lower";
    case ts::TailSide::upper: return "upper";
    case ts::TailSide::both: return "both";
  }
  return "?";
}

std::string branch_name(ts::StatBranch branch) {
  switch (branch) {
    case ts::StatBranch::general: return "general";
    case ts::StatBranch::a0_cvm: return "a0-cvm";
    case ts::StatBranch::a1: return "a1";
    case ts::StatBranch::a2: return "a2";
    case ts::StatBranch::ad: return "ad";
  }
  return "?";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tail-weighted goodness-of-fit statistics, their exact risk, the "
            "order-statistic discrete distribution, and automated GPD threshold selection.";

  py::register_exception<ts::divergent_error>(m, "DivergentError", PyExc_ArithmeticError);
  py::register_exception<ts::insufficient_data_error>(m, "InsufficientDataError",
                                                      PyExc_ValueError);

  // special functions
  m.def("ln_gamma", &ts::ln_gamma, py::arg("x"));
  m.def("ln_beta", &ts::ln_beta, py::arg("p"), py::arg("q"));
  m.def("digamma", &ts::digamma, py::arg("x"));
  m.def("stirling2", &ts::stirling2, py::arg("k"), py::arg("l"));
  m.def("falling_factorial", &ts::falling_factorial, py::arg("x"), py::arg("l"));
  m.def("rising_factorial", &ts::rising_factorial, py::arg("x"), py::arg("l"));

  // statistics
  py::class_<ts::StatResult>(m, "StatResult")
      .def_readonly("value", &ts::StatResult::value)
      .def_readonly("n", &ts::StatResult::n)
      .def_readonly("clamped", &ts::StatResult::clamped)
      .def_property_readonly("side", [](const ts::StatResult& r) { return side_name(r.spec.side); })
      .def_property_readonly("stress", [](const ts::StatResult& r) { return r.spec.stress; })
      .def_property_readonly("branch", [](const ts::StatResult& r) { return branch_name(r.branch); })
      .def("__repr__", [](const ts::StatResult& r) {
        return "StatResult(value=" + std::to_string(r.value) + ", side=" + side_name(r.spec.side) +
               ", stress=" + std::to_string(r.spec.stress) + ")";
      });

  m.def("weight", &ts::weight, py::arg("t"), py::arg("a"), py::arg("b"));
  m.def(
      "lower_tail_stat",
      [](const std::vector<double>& u, double a) { return ts::lower_tail_stat(make_unit(u), a); },
      py::arg("u"), py::arg("a"));
  m.def(
      "upper_tail_stat",
      [](const std::vector<double>& u, double b) { return ts::upper_tail_stat(make_unit(u), b); },
      py::arg("u"), py::arg("b"));
  m.def(
      "cvm_stat", [](const std::vector<double>& u) { return ts::cvm_stat(make_unit(u)); },
      py::arg("u"));
  m.def(
      "ad_stat", [](const std::vector<double>& u) { return ts::ad_stat(make_unit(u)); },
      py::arg("u"));
  m.def(
      "quadrature_oracle",
      [](const std::vector<double>& u, double a, double b) {
        return ts::quadrature_oracle(make_unit(u), a, b);
      },
      py::arg("u"), py::arg("a"), py::arg("b") = 0.0);
  m.def(
      "edf_value",
      [](const std::vector<double>& sample, double x) {
        return ts::edf_value(ts::Sample(sample), x);
      },
      py::arg("sample"), py::arg("x"));

  // risk
  py::class_<ts::RiskValue>(m, "RiskValue")
      .def_property_readonly("divergent", &ts::RiskValue::is_divergent)
      .def_property_readonly("value",
                             [](const ts::RiskValue& r) -> py::object {
                               if (r.is_divergent()) return py::none();
                               return py::float_(r.value);
                             })
      .def("__repr__", [](const ts::RiskValue& r) {
        return r.is_divergent() ? std::string("RiskValue(divergent)")
                                : "RiskValue(" + std::to_string(r.value) + ")";
      });

  m.def("risk_lower", &ts::risk_lower, py::arg("a"));
  m.def("risk_upper", &ts::risk_upper, py::arg("b"));
  m.def(
      "risk_named",
      [](const std::string& which) {
        if (which == "cvm") return ts::risk_named(ts::NamedStat::cvm);
        if (which == "ad") return ts::risk_named(ts::NamedStat::ad);
        if (which == "al") return ts::risk_named(ts::NamedStat::al);
        throw std::invalid_argument("which must be 'cvm', 'ad', or 'al'");
      },
      py::arg("which"));
  m.def("risk_curve", &ts::risk_curve, py::arg("stress_grid"));

  // order-statistic discrete distribution
  m.def(
      "osd_pmf",
      [](std::uint32_t n, double nu, std::uint32_t i) {
        return ts::osd_pmf(ts::OsdParams{n, nu}, i);
      },
      py::arg("n"), py::arg("nu"), py::arg("i"));
  m.def(
      "osd_cdf",
      [](std::uint32_t n, double nu, std::uint32_t s) {
        return ts::osd_cdf(ts::OsdParams{n, nu}, s);
      },
      py::arg("n"), py::arg("nu"), py::arg("s"));
  m.def(
      "osd_moment",
      [](std::uint32_t n, double nu, unsigned k) {
        return ts::osd_moment(ts::OsdParams{n, nu}, k);
      },
      py::arg("n"), py::arg("nu"), py::arg("k"));
  m.def(
      "osd_mean",
      [](std::uint32_t n, double nu) { return ts::osd_mean(ts::OsdParams{n, nu}); },
      py::arg("n"), py::arg("nu"));
  m.def(
      "osd_variance",
      [](std::uint32_t n, double nu) { return ts::osd_variance(ts::OsdParams{n, nu}); },
      py::arg("n"), py::arg("nu"));
  m.def(
      "osd_sample",
      [](std::uint32_t n, double nu, std::size_t count, std::uint64_t seed) {
        return ts::osd_sample(ts::OsdParams{n, nu}, count, seed);
      },
      py::arg("n"), py::arg("nu"), py::arg("count"), py::arg("seed"));
  m.def("m_k_direct", &ts::m_k_direct, py::arg("n"), py::arg("nu"), py::arg("k"));
  m.def("order_stat_density", &ts::order_stat_density, py::arg("u"), py::arg("i"), py::arg("n"));

  // Monte-Carlo harness
  py::class_<ts::McEstimate>(m, "McEstimate")
      .def_readonly("mean", &ts::McEstimate::mean)
      .def_readonly("std_error", &ts::McEstimate::std_error)
      .def_readonly("trials", &ts::McEstimate::trials)
      .def_readonly("n", &ts::McEstimate::n)
      .def_readonly("seed", &ts::McEstimate::seed)
      .def_readonly("heavy_tail_warning", &ts::McEstimate::heavy_tail_warning)
      .def("__repr__", [](const ts::McEstimate& e) {
        return "McEstimate(mean=" + std::to_string(e.mean) +
               ", std_error=" + std::to_string(e.std_error) + ")";
      });

  m.def(
      "simulate_risk",
      [](std::size_t n, const std::string& side, double stress, std::size_t trials,
         std::uint64_t seed, unsigned threads) {
        return ts::simulate_risk(n, make_spec(side, stress), trials, seed, threads);
      },
      py::arg("n"), py::arg("side"), py::arg("stress"), py::arg("trials"), py::arg("seed"),
      py::arg("threads") = 0);
  m.def(
      "divergence_probe",
      [](std::size_t n, const std::vector<std::size_t>& schedule, std::uint64_t seed,
         unsigned threads) {
        std::vector<py::dict> out;
        for (const auto& point : ts::divergence_probe(n, schedule, seed, threads)) {
          py::dict d;
          d["trials"] = point.estimate.trials;
          d["mean"] = point.estimate.mean;
          d["std_error"] = point.estimate.std_error;
          d["max_value"] = point.max_value;
          out.push_back(d);
        }
        return out;
      },
      py::arg("n"), py::arg("schedule"), py::arg("seed"), py::arg("threads") = 0);

  // GPD and threshold selection
  py::class_<ts::GpdParams>(m, "GpdParams")
      .def(py::init<double, double, double>(), py::arg("shape") = 0.0, py::arg("scale") = 1.0,
           py::arg("threshold") = 0.0)
      .def_readwrite("shape", &ts::GpdParams::shape)
      .def_readwrite("scale", &ts::GpdParams::scale)
      .def_readwrite("threshold", &ts::GpdParams::threshold)
      .def("__repr__", [](const ts::GpdParams& p) {
        return "GpdParams(shape=" + std::to_string(p.shape) + ", scale=" + std::to_string(p.scale) +
               ", threshold=" + std::to_string(p.threshold) + ")";
      });

  py::class_<ts::GpdFit>(m, "GpdFit")
      .def_readonly("params", &ts::GpdFit::params)
      .def_readonly("loglik", &ts::GpdFit::loglik)
      .def_readonly("converged", &ts::GpdFit::converged)
      .def_readonly("iterations", &ts::GpdFit::iterations);

  m.def(
      "gpd_cdf", [](double x, const ts::GpdParams& p) { return ts::gpd_cdf(x, p); }, py::arg("x"),
      py::arg("params"));
  m.def(
      "gpd_quantile", [](double p, const ts::GpdParams& params) { return ts::gpd_quantile(p, params); },
      py::arg("p"), py::arg("params"));
  m.def("gpd_fit_mle", &ts::gpd_fit_mle, py::arg("excesses"), py::arg("min_count") = 30);

  py::class_<ts::CandidateResult>(m, "CandidateResult")
      .def_readonly("threshold", &ts::CandidateResult::threshold)
      .def_readonly("excess_count", &ts::CandidateResult::excess_count)
      .def_readonly("fit", &ts::CandidateResult::fit)
      .def_readonly("statistic", &ts::CandidateResult::statistic)
      .def_readonly("p_value", &ts::CandidateResult::p_value);

  py::class_<ts::ThresholdScan>(m, "ThresholdScan")
      .def_readonly("candidates", &ts::ThresholdScan::candidates)
      .def_readonly("alpha", &ts::ThresholdScan::alpha)
      .def_readonly("bootstrap_reps", &ts::ThresholdScan::bootstrap_reps)
      .def_readonly("seed", &ts::ThresholdScan::seed)
      .def_readonly("notes", &ts::ThresholdScan::notes)
      .def_property_readonly("selected_index",
                             [](const ts::ThresholdScan& s) -> py::object {
                               if (!s.selected) return py::none();
                               return py::int_(*s.selected);
                             })
      .def_property_readonly("selected_threshold", [](const ts::ThresholdScan& s) -> py::object {
        if (!s.selected) return py::none();
        return py::float_(s.candidates[*s.selected].threshold);
      });

  m.def(
      "tail_gof_pvalue",
      [](const std::vector<double>& excesses, const ts::GpdParams& fitted, const std::string& side,
         double stress, std::size_t reps, std::uint64_t seed, unsigned threads) {
        const auto r = ts::tail_gof_pvalue(excesses, fitted, make_spec(side, stress), reps, seed,
                                           threads);
        return py::make_tuple(r.statistic, r.p_value);
      },
      py::arg("excesses"), py::arg("fitted"), py::arg("side") = "upper", py::arg("stress") = 1.0,
      py::arg("bootstrap_reps") = 99, py::arg("seed") = 0, py::arg("threads") = 0);
  m.def("forward_stop", &ts::forward_stop, py::arg("p_values"), py::arg("alpha"));
  m.def(
      "select_threshold",
      [](const std::vector<double>& values, const std::vector<double>& candidates,
         const std::string& side, double stress, double alpha, std::size_t reps,
         std::uint64_t seed, std::size_t min_excesses, unsigned threads) {
        return ts::select_threshold(ts::Sample(values), candidates, make_spec(side, stress), alpha,
                                    reps, seed, min_excesses, threads);
      },
      py::arg("values"), py::arg("candidates"), py::arg("side") = "upper", py::arg("stress") = 1.0,
      py::arg("alpha") = 0.1, py::arg("bootstrap_reps") = 99, py::arg("seed") = 0,
      py::arg("min_excesses") = 30, py::arg("threads") = 0);

#ifdef TAILSTAT_VERSION
  m.attr("__version__") = TAILSTAT_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
