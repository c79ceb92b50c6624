#pragma once

#include <cstdint>
#include <vector>

#include "tailstat/rng.hpp"

// Generalized Pareto distribution in the exceedance (peaks-over-threshold)
// parameterization: shape xi, scale sigma > 0, threshold as location.

namespace tailstat {

struct GpdParams {
  double shape = 0.0;
  double scale = 1.0;
  double threshold = 0.0;
};

/// F(x) for x >= threshold. Throws std::domain_error below the threshold.
/// Values beyond the finite upper endpoint (shape < 0) map to 1.
double gpd_cdf(double x, const GpdParams& params);

/// Inverse CDF, p in [0, 1).
double gpd_quantile(double p, const GpdParams& params);

/// Log-likelihood of excesses (threshold already removed) under (shape, scale).
/// Returns -inf outside the feasible region.
double gpd_loglik(const std::vector<double>& excesses, double shape, double scale);

/// `count` draws by inverse transform from the given stream.
std::vector<double> gpd_sample(const GpdParams& params, std::size_t count, Rng& rng);

struct GpdFit {
  GpdParams params;       // threshold = 0, excess scale
  double loglik = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Maximum-likelihood fit to excesses over a fixed threshold (already
/// subtracted). Quasi-Newton on (shape, log scale) from a moment start.
/// Throws insufficient_data_error when fewer than min_count excesses are
/// given and std::invalid_argument for degenerate (constant) input.
GpdFit gpd_fit_mle(const std::vector<double>& excesses, std::size_t min_count = 30);

}  // namespace tailstat
