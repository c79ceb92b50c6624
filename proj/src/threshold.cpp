#include "tailstat/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tailstat/errors.hpp"
#include "tailstat/parallel.hpp"
#include "tailstat/rng.hpp"

namespace tailstat {

namespace {

// PIT of excesses under the given GPD, sorted into an ordered unit sample.
OrderedUnitSample pit_under(const std::vector<double>& excesses, const GpdParams& params) {
  std::vector<double> u;
  u.reserve(excesses.size());
  for (double y : excesses) {
    u.push_back(gpd_cdf(params.threshold + y, params));
  }
  return OrderedUnitSample::from_unsorted(std::move(u));
}

}  // namespace

PvalueResult tail_gof_pvalue(const std::vector<double>& excesses, const GpdParams& fitted,
                             const StatSpec& spec, std::size_t bootstrap_reps,
                             std::uint64_t seed, unsigned threads) {
  validate_spec(spec);
  if (!spec_evaluable(spec)) {
    throw divergent_error("tail_gof_pvalue: stress 3 has no evaluable statistic");
  }
  if (bootstrap_reps < 99) {
    throw std::invalid_argument("tail_gof_pvalue: need at least 99 bootstrap replicates");
  }
  const StatResult observed = evaluate_stat(pit_under(excesses, fitted), spec);

  const std::size_t m = excesses.size();
  std::vector<double> boot(bootstrap_reps);
  parallel_for_index(bootstrap_reps, threads, [&](std::size_t r) {
    Rng rng = Rng::stream(seed, r);
    GpdParams draw_from = fitted;
    draw_from.threshold = 0.0;
    const std::vector<double> resample = gpd_sample(draw_from, m, rng);
    GpdParams refit;
    try {
      refit = gpd_fit_mle(resample, 2).params;
    } catch (const std::invalid_argument&) {
      refit = draw_from;  // degenerate resample; fall back to the parent fit
    }
    boot[r] = evaluate_stat(pit_under(resample, refit), spec).value;
  });

  std::size_t count = 0;
  for (double b : boot) {
    if (b >= observed.value) ++count;
  }
  PvalueResult out;
  out.statistic = observed.value;
  out.p_value = static_cast<double>(1 + count) / static_cast<double>(bootstrap_reps + 1);
  out.clamped = observed.clamped;
  return out;
}

std::size_t forward_stop(const std::vector<double>& p_values, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("forward_stop: alpha must lie in (0, 1)");
  }
  std::size_t k_hat = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < p_values.size(); ++k) {
    const double p = std::min(p_values[k], 1.0 - 1e-12);
    if (!(p >= 0.0)) throw std::invalid_argument("forward_stop: p-values must lie in [0, 1]");
    sum += -std::log1p(-p);
    if (sum / static_cast<double>(k + 1) <= alpha) {
      k_hat = k + 1;
    }
  }
  return k_hat;
}

ThresholdScan select_threshold(const Sample& sample, const std::vector<double>& candidates,
                               const StatSpec& spec, double alpha, std::size_t bootstrap_reps,
                               std::uint64_t seed, std::size_t min_excesses, unsigned threads) {
  validate_spec(spec);
  if (!spec_evaluable(spec)) {
    throw divergent_error("select_threshold: stress 3 has no evaluable statistic");
  }
  if (candidates.size() < 2) {
    throw std::invalid_argument("select_threshold: need at least 2 candidate thresholds");
  }
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (!(candidates[i] > candidates[i - 1])) {
      throw std::invalid_argument("select_threshold: candidates must be strictly ascending");
    }
  }
  if (min_excesses < 2) {
    throw std::invalid_argument("select_threshold: min_excesses must be at least 2");
  }

  ThresholdScan scan;
  scan.spec = spec;
  scan.spec_risk = risk_of_spec(spec);
  scan.alpha = alpha;
  scan.bootstrap_reps = bootstrap_reps;
  scan.seed = seed;

  std::size_t prev_count = 0;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const double threshold = candidates[j];
    std::vector<double> excesses;
    for (double x : sample.values()) {
      if (x > threshold) excesses.push_back(x - threshold);
    }
    if (excesses.size() < min_excesses) {
      scan.notes.push_back("scan stopped at threshold " + std::to_string(threshold) + ": only " +
                           std::to_string(excesses.size()) + " excesses");
      break;
    }
    if (!scan.candidates.empty() && excesses.size() == prev_count) {
      scan.notes.push_back("skipped threshold " + std::to_string(threshold) +
                           ": exceedance set unchanged");
      continue;
    }
    prev_count = excesses.size();

    CandidateResult result;
    result.threshold = threshold;
    result.excess_count = excesses.size();
    result.fit = gpd_fit_mle(excesses, min_excesses);
    const std::uint64_t sub_seed = Rng::stream(seed, j).next_u64();
    const PvalueResult pv =
        tail_gof_pvalue(excesses, result.fit.params, spec, bootstrap_reps, sub_seed, threads);
    result.statistic = pv.statistic;
    result.p_value = pv.p_value;
    scan.candidates.push_back(result);
  }

  if (scan.candidates.empty()) {
    throw insufficient_data_error(
        "select_threshold: no candidate threshold has enough excesses");
  }

  std::vector<double> ps;
  ps.reserve(scan.candidates.size());
  for (const auto& c : scan.candidates) ps.push_back(c.p_value);
  const std::size_t rejected = forward_stop(ps, alpha);
  if (rejected < scan.candidates.size()) {
    scan.selected = rejected;
  } else {
    scan.selected = std::nullopt;
    scan.notes.push_back("every candidate rejected by the stopping rule at alpha " +
                         std::to_string(alpha));
  }
  return scan;
}

}  // namespace tailstat
