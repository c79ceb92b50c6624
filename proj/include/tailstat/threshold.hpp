#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tailstat/gpd.hpp"
#include "tailstat/risk.hpp"
#include "tailstat/sample.hpp"
#include "tailstat/tail_stat.hpp"

// Automated peaks-over-threshold threshold selection: scan ascending
// candidate thresholds, test the GPD fit of the excesses with a
// tail-weighted statistic (stress-1 upper-tail member by default), and pick
// the first candidate the ordered-p-value ForwardStop rule does not reject.

namespace tailstat {

struct PvalueResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int clamped = 0;
};

/// Parametric bootstrap p-value of the fitted GPD: the statistic is
/// evaluated on the PIT of the excesses under `fitted`; each of the
/// `bootstrap_reps` replicates draws an equal-size sample from `fitted`,
/// refits, and recomputes the statistic. p = (1 + #{boot >= observed}) /
/// (reps + 1). Requires bootstrap_reps >= 99.
PvalueResult tail_gof_pvalue(const std::vector<double>& excesses, const GpdParams& fitted,
                             const StatSpec& spec, std::size_t bootstrap_reps,
                             std::uint64_t seed, unsigned threads = 0);

/// ForwardStop over ordered p-values: the number of leading hypotheses
/// rejected at level alpha, max{k : -(1/k) sum_{i<=k} ln(1-p_i) <= alpha}
/// (0 when no prefix qualifies).
std::size_t forward_stop(const std::vector<double>& p_values, double alpha);

struct CandidateResult {
  double threshold = 0.0;
  std::size_t excess_count = 0;
  GpdFit fit;
  double statistic = 0.0;
  double p_value = 1.0;
};

struct ThresholdScan {
  std::vector<CandidateResult> candidates;   // scanned, ascending
  std::optional<std::size_t> selected;       // index into candidates
  StatSpec spec;
  RiskValue spec_risk;                       // average loss of the chosen statistic
  double alpha = 0.1;
  std::size_t bootstrap_reps = 99;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;            // skipped candidates, selection diagnostics
};

/// Scan ascending candidate thresholds over the sample. Candidates whose
/// excess count ties the previous one are skipped (the exceedance set is
/// unchanged); the scan stops at the first candidate with fewer than
/// min_excesses. Throws insufficient_data_error when nothing is scannable.
ThresholdScan select_threshold(const Sample& sample, const std::vector<double>& candidates,
                               const StatSpec& spec = StatSpec{TailSide::upper, 1.0},
                               double alpha = 0.1, std::size_t bootstrap_reps = 99,
                               std::uint64_t seed = 0, std::size_t min_excesses = 30,
                               unsigned threads = 0);

}  // namespace tailstat
