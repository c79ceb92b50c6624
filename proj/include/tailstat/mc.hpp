#pragma once

#include <cstdint>
#include <vector>

#include "tailstat/tail_stat.hpp"

// Monte-Carlo estimation of the expected statistic value under the null
// (uniform order statistics), for checking the closed-form risk empirically.

namespace tailstat {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  std::size_t n = 0;
  StatSpec spec;
  std::uint64_t seed = 0;
  // Stress near a pole: per-sample values are heavy-tailed and the
  // CLT acceptance band around the mean is unreliable.
  bool heavy_tail_warning = false;
};

/// Draws `trials` samples of n uniforms, evaluates the statistic on each
/// ordered sample, returns mean and standard error. Deterministic for a
/// fixed (seed, trials, n, spec) regardless of worker count. Stress 3 is
/// refused before simulation; stress 2 runs with the heavy-tail flag.
McEstimate simulate_risk(std::size_t n, const StatSpec& spec, std::size_t trials,
                         std::uint64_t seed, unsigned threads = 0);

struct ProbePoint {
  McEstimate estimate;
  double max_value = 0.0;  // largest statistic over the nested trial set
};

/// Running means over nested trial subsets at stress 2, where the
/// expectation is infinite. Descriptive only.
std::vector<ProbePoint> divergence_probe(std::size_t n,
                                         const std::vector<std::size_t>& trial_schedule,
                                         std::uint64_t seed, unsigned threads = 0);

}  // namespace tailstat
