#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_support.hpp"
#include "tailstat/errors.hpp"
#include "tailstat/mc.hpp"
#include "tailstat/osd.hpp"
#include "tailstat/rational.hpp"
#include "tailstat/risk.hpp"
#include "tailstat/sample.hpp"
#include "tailstat/tail_stat.hpp"
#include "tailstat/threshold.hpp"

namespace ts = tailstat;
using nlohmann::ordered_json;
using tailstat::cli::cli_error;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw cli_error("cannot open output file: " + output_path);
  out << text;
}

ts::Rational parse_stress(const std::string& text, const char* flag) {
  const auto r = ts::Rational::parse_decimal(text);
  if (!r) throw cli_error(std::string(flag) + " must be a decimal number, got '" + text + "'");
  if (r->to_double() < 0.0) throw cli_error(std::string(flag) + " must be >= 0");
  return *r;
}

ordered_json risk_json(const ts::RiskValue& risk, const std::optional<ts::ExactRisk>& exact) {
  ordered_json j;
  if (risk.is_divergent()) {
    j["kind"] = "divergent";
  } else {
    j["kind"] = "finite";
    j["value"] = risk.value;
  }
  if (exact && !exact->divergent) j["exact"] = exact->value.to_string();
  return j;
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

// ---------------------------------------------------------------- gof ----

struct GofConfig {
  std::string input;
  std::string output;
  std::string format = "json";
  bool pit = false;
  std::string model;
  double lo = 0.0, hi = 1.0;
  double rate = 1.0;
  double mu = 0.0, sigma = 1.0;
  double xi = 0.0, threshold = 0.0;
  std::vector<std::string> stats;
  std::string a_text = "1";
  std::string b_text = "1";
};

int run_gof(const GofConfig& cfg) {
  const std::vector<double> raw = ts::cli::read_value_csv(cfg.input);

  ts::OrderedUnitSample unit = [&] {
    if (cfg.pit) {
      for (double v : raw) {
        if (!(v >= 0.0 && v <= 1.0)) {
          throw cli_error("--pit input values must lie in [0, 1]");
        }
      }
      return ts::OrderedUnitSample::from_unsorted(raw);
    }
    const ts::Sample sample(raw);
    if (cfg.model == "uniform") {
      return ts::to_ordered_unit(sample, ts::ModelCdf::uniform(cfg.lo, cfg.hi));
    } else if (cfg.model == "exp") {
      return ts::to_ordered_unit(sample, ts::ModelCdf::exponential(cfg.rate));
    } else if (cfg.model == "normal") {
      return ts::to_ordered_unit(sample, ts::ModelCdf::normal(cfg.mu, cfg.sigma));
    } else if (cfg.model == "gpd") {
      return ts::to_ordered_unit(sample, ts::ModelCdf::gpd(cfg.xi, cfg.sigma, cfg.threshold));
    }
    throw cli_error("need --pit or --model {uniform,exp,normal,gpd}");
  }();

  const ts::Rational a_rat = parse_stress(cfg.a_text, "--a");
  const ts::Rational b_rat = parse_stress(cfg.b_text, "--b");

  ordered_json results = ordered_json::array();
  for (const std::string& name : cfg.stats) {
    ts::StatResult res;
    std::optional<ts::ExactRisk> exact;
    if (name == "cvm") {
      res = ts::cvm_stat(unit);
      exact = ts::risk_named_exact(ts::NamedStat::cvm);
    } else if (name == "ad") {
      res = ts::ad_stat(unit);
      exact = ts::risk_named_exact(ts::NamedStat::ad);
    } else if (name == "lower") {
      res = ts::lower_tail_stat(unit, a_rat.to_double());
      exact = ts::risk_lower_exact(a_rat);
    } else if (name == "upper") {
      res = ts::upper_tail_stat(unit, b_rat.to_double());
      exact = ts::risk_upper_exact(b_rat);
    } else {
      throw cli_error("unknown statistic '" + name + "' (expected cvm, ad, lower, upper)");
    }
    ordered_json r;
    r["stat"] = name;
    r["side"] = side_name(res.spec.side);
    r["stress"] = res.spec.stress;
    r["value"] = res.value;
    r["branch"] = branch_name(res.branch);
    r["clamped"] = res.clamped;
    r["risk"] = risk_json(ts::risk_of_spec(res.spec), exact);
    results.push_back(std::move(r));
  }

  ordered_json doc;
  doc["command"] = "gof";
  doc["n"] = static_cast<std::uint64_t>(unit.size());
  doc["pit"] = cfg.pit;
  if (!cfg.pit) doc["model"] = cfg.model;
  doc["results"] = std::move(results);
  emit(ts::cli::dump_json(doc), cfg.output);
  return kExitOk;
}

// --------------------------------------------------------------- risk ----

struct RiskConfig {
  std::string a_text;
  std::string grid;
  std::string output;
  std::string format;  // default depends on mode
};

int run_risk(const RiskConfig& cfg) {
  if (cfg.a_text.empty() == cfg.grid.empty()) {
    throw cli_error("need exactly one of --a or --grid");
  }

  std::vector<ts::Rational> stresses;
  if (!cfg.a_text.empty()) {
    stresses.push_back(parse_stress(cfg.a_text, "--a"));
  } else {
    stresses = ts::cli::parse_grid_spec(cfg.grid);
    if (!stresses.empty() && stresses.front().to_double() < 0.0) {
      throw cli_error("--grid start must be >= 0");
    }
  }

  struct Row {
    ts::Rational stress;
    ts::ExactRisk exact;
  };
  std::vector<Row> rows;
  for (const auto& a : stresses) {
    rows.push_back(Row{a, ts::risk_lower_exact(a)});
  }

  const std::string format = !cfg.format.empty() ? cfg.format : (cfg.grid.empty() ? "json" : "csv");
  if (format == "csv") {
    std::string out = "stress,risk,divergent\n";
    for (const auto& row : rows) {
      out += ts::cli::format_double(row.stress.to_double());
      out += ',';
      if (!row.exact.divergent) out += ts::cli::format_double(row.exact.value.to_double());
      out += ',';
      out += row.exact.divergent ? '1' : '0';
      out += '\n';
    }
    emit(out, cfg.output);
    return kExitOk;
  }

  ordered_json points = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json p;
    p["stress"] = row.stress.to_double();
    p["stress_exact"] = row.stress.to_string();
    if (row.exact.divergent) {
      p["divergent"] = true;
    } else {
      p["divergent"] = false;
      p["risk"] = row.exact.value.to_double();
      p["risk_exact"] = row.exact.value.to_string();
    }
    points.push_back(std::move(p));
  }
  ordered_json doc;
  doc["command"] = "risk";
  doc["points"] = std::move(points);
  emit(ts::cli::dump_json(doc), cfg.output);
  return kExitOk;
}

// ----------------------------------------------------------- simulate ----

struct SimulateConfig {
  std::size_t n = 100;
  std::size_t trials = 20000;
  std::optional<std::uint64_t> seed;
  std::string stat = "lower";
  std::string a_text = "1";
  std::string probe_schedule;
  unsigned threads = 0;
  std::string output;
};

ts::StatSpec spec_from_cli(const std::string& stat, const std::string& a_text) {
  const double stress = parse_stress(a_text, "--a").to_double();
  if (stat == "lower") return ts::StatSpec{ts::TailSide::lower, stress};
  if (stat == "upper") return ts::StatSpec{ts::TailSide::upper, stress};
  if (stat == "ad") return ts::StatSpec{ts::TailSide::both, 1.0};
  throw cli_error("unknown statistic '" + stat + "' (expected lower, upper, ad)");
}

ordered_json estimate_json(const ts::McEstimate& est) {
  ordered_json j;
  j["mean"] = est.mean;
  j["std_error"] = est.std_error;
  j["trials"] = static_cast<std::uint64_t>(est.trials);
  j["n"] = static_cast<std::uint64_t>(est.n);
  j["heavy_tail_warning"] = est.heavy_tail_warning;
  return j;
}

int run_simulate(const SimulateConfig& cfg) {
  const std::uint64_t seed = cfg.seed ? *cfg.seed : ts::cli::default_seed();
  const ts::StatSpec spec = spec_from_cli(cfg.stat, cfg.a_text);

  ordered_json doc;
  doc["command"] = "simulate";
  doc["spec"] = {{"side", side_name(spec.side)}, {"stress", spec.stress}};
  doc["seed"] = seed;

  if (!cfg.probe_schedule.empty()) {
    if (!(spec.side == ts::TailSide::lower && spec.stress == 2.0)) {
      throw cli_error("--probe-schedule requires --stat lower --a 2");
    }
    std::vector<std::size_t> schedule;
    for (double v : ts::cli::parse_candidate_list(cfg.probe_schedule)) {
      if (v < 2.0) throw cli_error("probe schedule entries must be >= 2");
      schedule.push_back(static_cast<std::size_t>(v));
    }
    const auto points = ts::divergence_probe(cfg.n, schedule, seed, cfg.threads);
    ordered_json arr = ordered_json::array();
    for (const auto& point : points) {
      ordered_json p = estimate_json(point.estimate);
      p["max_value"] = point.max_value;
      arr.push_back(std::move(p));
    }
    doc["probe"] = std::move(arr);
    emit(ts::cli::dump_json(doc), cfg.output);
    return kExitOk;
  }

  const ts::McEstimate est = ts::simulate_risk(cfg.n, spec, cfg.trials, seed, cfg.threads);
  doc["estimate"] = estimate_json(est);
  const ts::RiskValue risk = ts::risk_of_spec(spec);
  doc["risk"] = risk_json(risk, std::nullopt);
  emit(ts::cli::dump_json(doc), cfg.output);
  return kExitOk;
}

// ---------------------------------------------------------------- osd ----

struct OsdConfig {
  std::uint32_t n = 1;
  double nu = 0.0;
  bool table = false;
  std::optional<unsigned> moments;
  std::size_t sample_count = 0;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string output;
};

int run_osd(const OsdConfig& cfg) {
  const ts::OsdParams params{cfg.n, cfg.nu};
  ts::validate_osd(params);

  if (cfg.format == "csv") {
    // Plot/round-trip friendly: sample values one per line, or the pmf table.
    std::string out;
    if (cfg.sample_count > 0) {
      const std::uint64_t seed = cfg.seed ? *cfg.seed : ts::cli::default_seed();
      out += "value\n";
      for (std::uint32_t v : ts::osd_sample(params, cfg.sample_count, seed)) {
        out += std::to_string(v);
        out += '\n';
      }
    } else {
      out += "i,pmf,cdf\n";
      for (std::uint32_t i = 1; i <= cfg.n; ++i) {
        out += std::to_string(i);
        out += ',';
        out += ts::cli::format_double(ts::osd_pmf(params, i));
        out += ',';
        out += ts::cli::format_double(ts::osd_cdf(params, i));
        out += '\n';
      }
    }
    emit(out, cfg.output);
    return kExitOk;
  }

  ordered_json doc;
  doc["command"] = "osd";
  doc["n"] = cfg.n;
  doc["nu"] = cfg.nu;
  doc["mean"] = ts::osd_mean(params);
  doc["variance"] = ts::osd_variance(params);
  if (cfg.moments) {
    ordered_json arr = ordered_json::array();
    for (unsigned k = 0; k <= *cfg.moments; ++k) {
      arr.push_back(ts::osd_moment(params, k));
    }
    doc["moments"] = std::move(arr);
  }
  if (cfg.table) {
    ordered_json arr = ordered_json::array();
    for (std::uint32_t i = 1; i <= cfg.n; ++i) {
      ordered_json row;
      row["i"] = i;
      row["pmf"] = ts::osd_pmf(params, i);
      row["cdf"] = ts::osd_cdf(params, i);
      arr.push_back(std::move(row));
    }
    doc["table"] = std::move(arr);
  }
  if (cfg.sample_count > 0) {
    const std::uint64_t seed = cfg.seed ? *cfg.seed : ts::cli::default_seed();
    doc["seed"] = seed;
    ordered_json arr = ordered_json::array();
    for (std::uint32_t v : ts::osd_sample(params, cfg.sample_count, seed)) {
      arr.push_back(v);
    }
    doc["samples"] = std::move(arr);
  }
  emit(ts::cli::dump_json(doc), cfg.output);
  return kExitOk;
}

// --------------------------------------------------- select-threshold ----

struct SelectConfig {
  std::string input;
  std::string candidates;
  double alpha = 0.1;
  std::size_t reps = 99;
  std::optional<std::uint64_t> seed;
  std::string weight_side = "high";
  std::string a_text = "1";
  std::size_t min_excesses = 30;
  unsigned threads = 0;
  std::string output;
};

int run_select(const SelectConfig& cfg) {
  const std::vector<double> raw = ts::cli::read_value_csv(cfg.input);
  const ts::Sample sample(raw);
  const std::vector<double> candidates = ts::cli::parse_candidate_list(cfg.candidates);
  const double stress = parse_stress(cfg.a_text, "--stat-a").to_double();

  // Weight on high excess quantiles = upper-tail statistic on the PIT.
  ts::StatSpec spec;
  if (cfg.weight_side == "high") {
    spec = ts::StatSpec{ts::TailSide::upper, stress};
  } else if (cfg.weight_side == "low") {
    spec = ts::StatSpec{ts::TailSide::lower, stress};
  } else {
    throw cli_error("--weight-side must be high or low");
  }

  const ts::RiskValue spec_risk = ts::risk_of_spec(spec);
  if (spec_risk.is_divergent()) {
    std::cerr << "warning: the chosen statistic (stress " << spec.stress
              << ") has divergent risk; its average loss is unbounded\n";
  }

  const std::uint64_t seed = cfg.seed ? *cfg.seed : ts::cli::default_seed();
  const ts::ThresholdScan scan = ts::select_threshold(sample, candidates, spec, cfg.alpha,
                                                      cfg.reps, seed, cfg.min_excesses,
                                                      cfg.threads);

  ordered_json cand = ordered_json::array();
  for (const auto& c : scan.candidates) {
    ordered_json j;
    j["threshold"] = c.threshold;
    j["excess_count"] = static_cast<std::uint64_t>(c.excess_count);
    j["shape"] = c.fit.params.shape;
    j["scale"] = c.fit.params.scale;
    j["loglik"] = c.fit.loglik;
    j["converged"] = c.fit.converged;
    j["statistic"] = c.statistic;
    j["p_value"] = c.p_value;
    cand.push_back(std::move(j));
  }

  ordered_json doc;
  doc["command"] = "select-threshold";
  doc["n"] = static_cast<std::uint64_t>(sample.size());
  doc["spec"] = {{"side", side_name(spec.side)}, {"stress", spec.stress}};
  doc["spec_risk"] = risk_json(spec_risk, std::nullopt);
  doc["alpha"] = scan.alpha;
  doc["bootstrap_reps"] = static_cast<std::uint64_t>(scan.bootstrap_reps);
  doc["seed"] = seed;
  doc["candidates"] = std::move(cand);
  if (scan.selected) {
    doc["selected_index"] = static_cast<std::uint64_t>(*scan.selected);
    doc["selected_threshold"] = scan.candidates[*scan.selected].threshold;
  } else {
    doc["selected_index"] = nullptr;
    doc["selected_threshold"] = nullptr;
  }
  ordered_json notes = ordered_json::array();
  for (const auto& note : scan.notes) notes.push_back(note);
  doc["notes"] = std::move(notes);
  emit(ts::cli::dump_json(doc), cfg.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tail-weighted goodness-of-fit statistics, their risk, and "
               "automated GPD threshold selection"};
  app.require_subcommand(1);

  GofConfig gof;
  auto* gof_cmd = app.add_subcommand("gof", "evaluate goodness-of-fit statistics on a sample");
  gof_cmd->add_option("-i,--input", gof.input, "CSV input, one value per line")->required();
  gof_cmd->add_option("-o,--output", gof.output, "output path (default stdout)");
  gof_cmd->add_flag("--pit", gof.pit, "input values are already probability-integral transformed");
  gof_cmd->add_option("--model", gof.model, "model CDF: uniform, exp, normal, gpd");
  gof_cmd->add_option("--lo", gof.lo, "uniform lower endpoint");
  gof_cmd->add_option("--hi", gof.hi, "uniform upper endpoint");
  gof_cmd->add_option("--rate", gof.rate, "exponential rate");
  gof_cmd->add_option("--mu", gof.mu, "normal mean");
  gof_cmd->add_option("--sigma", gof.sigma, "normal/gpd scale");
  gof_cmd->add_option("--xi", gof.xi, "gpd shape");
  gof_cmd->add_option("--threshold", gof.threshold, "gpd threshold");
  gof_cmd->add_option("--stat", gof.stats, "statistics to evaluate: cvm, ad, lower, upper")
      ->delimiter(',')
      ->required();
  gof_cmd->add_option("--a", gof.a_text, "lower-tail stress exponent");
  gof_cmd->add_option("--b", gof.b_text, "upper-tail stress exponent");

  RiskConfig risk;
  auto* risk_cmd = app.add_subcommand("risk", "closed-form risk of the statistic family");
  risk_cmd->add_option("--a", risk.a_text, "stress value (decimal, exact arithmetic)");
  risk_cmd->add_option("--grid", risk.grid, "stress grid start:stop:step (emits CSV)");
  risk_cmd->add_option("--format", risk.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  risk_cmd->add_option("-o,--output", risk.output, "output path (default stdout)");

  SimulateConfig sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo estimate of the expected statistic");
  sim_cmd->add_option("--n", sim.n, "sample size per trial")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--trials", sim.trials, "number of trials")->check(CLI::Range(2u, 100000000u));
  sim_cmd->add_option("--seed", sim.seed, "RNG seed (default: TAILSTAT_SEED or 0)");
  sim_cmd->add_option("--stat", sim.stat, "lower, upper, or ad");
  sim_cmd->add_option("--a", sim.a_text, "stress exponent");
  sim_cmd->add_option("--probe-schedule", sim.probe_schedule,
                      "divergence probe: nested trial counts (requires --a 2)");
  sim_cmd->add_option("--threads", sim.threads, "worker threads (0 = auto)");
  sim_cmd->add_option("-o,--output", sim.output, "output path (default stdout)");

  OsdConfig osd;
  auto* osd_cmd = app.add_subcommand("osd", "order-statistic discrete distribution on {1..n}");
  osd_cmd->add_option("--n", osd.n, "support size")->required()->check(CLI::PositiveNumber);
  osd_cmd->add_option("--nu", osd.nu, "shape parameter, must be > -1")
      ->required()
      ->check(CLI::Range(-1.0 + 1e-9, 1e18));
  osd_cmd->add_flag("--table", osd.table, "emit the pmf/cdf table");
  osd_cmd->add_option("--moments", osd.moments, "emit raw moments 0..K")
      ->check(CLI::Range(0u, 32u));
  osd_cmd->add_option("--sample", osd.sample_count, "draw this many samples");
  osd_cmd->add_option("--seed", osd.seed, "RNG seed (default: TAILSTAT_SEED or 0)");
  osd_cmd->add_option("--format", osd.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  osd_cmd->add_option("-o,--output", osd.output, "output path (default stdout)");

  SelectConfig sel;
  auto* sel_cmd =
      app.add_subcommand("select-threshold", "automated GPD threshold selection over a grid");
  sel_cmd->add_option("-i,--input", sel.input, "CSV input, one value per line")->required();
  sel_cmd->add_option("--candidates", sel.candidates,
                      "candidate thresholds: comma list or start:stop:step")
      ->required();
  sel_cmd->add_option("--alpha", sel.alpha, "ForwardStop level")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  sel_cmd->add_option("--reps", sel.reps, "bootstrap replicates (>= 99)")
      ->check(CLI::Range(99u, 1000000u));
  sel_cmd->add_option("--seed", sel.seed, "RNG seed (default: TAILSTAT_SEED or 0)");
  sel_cmd->add_option("--weight-side", sel.weight_side,
                      "which excess quantiles carry the weight: high or low")
      ->check(CLI::IsMember({"high", "low"}));
  sel_cmd->add_option("--stat-a", sel.a_text, "stress exponent of the test statistic");
  sel_cmd->add_option("--min-excesses", sel.min_excesses, "minimum excesses per candidate")
      ->check(CLI::Range(static_cast<std::size_t>(2), static_cast<std::size_t>(1000000)));
  sel_cmd->add_option("--threads", sel.threads, "worker threads (0 = auto)");
  sel_cmd->add_option("-o,--output", sel.output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (gof_cmd->parsed()) return run_gof(gof);
    if (risk_cmd->parsed()) return run_risk(risk);
    if (sim_cmd->parsed()) return run_simulate(sim);
    if (osd_cmd->parsed()) return run_osd(osd);
    if (sel_cmd->parsed()) return run_select(sel);
  } catch (const cli_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ts::divergent_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ts::insufficient_data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
