#pragma once

#include <cstdint>
#include <vector>

// One-parameter discrete distribution on {1, ..., n} built from
// order-statistic beta-function ratios: p_i(nu) proportional to
// B(i+nu, n-i+1)/B(i, n-i+1), uniform at nu = 0, left-edge weighted for
// nu in (-1, 0), right-edge weighted for nu > 0.

namespace tailstat {

struct OsdParams {
  std::uint32_t n = 1;
  double nu = 0.0;
};

/// Throws std::domain_error unless n >= 1 and nu >= -1 + 1e-9 (the prefactor
/// nu+1 degenerates at the boundary).
void validate_osd(const OsdParams& params);

/// p_i(nu) = ((nu+1)/n) B(i+nu, n-i+1)/B(i, n-i+1), log-space evaluated.
double osd_pmf(const OsdParams& params, std::uint32_t i);

/// The alternative product form of the pmf; an independent numeric route
/// used for cross-checks.
double osd_pmf_alt(const OsdParams& params, std::uint32_t i);

/// Closed-form CDF B(n, nu+1)/B(s, nu+1).
double osd_cdf(const OsdParams& params, std::uint32_t s);

/// k-th raw moment through the Stirling-number closed form.
double osd_moment(const OsdParams& params, unsigned k);

/// Direct beta-ratio sum ((nu+1)/n) sum i^k B(i+nu, n-i+1)/B(i, n-i+1);
/// the oracle the closed form is checked against.
double m_k_direct(std::uint32_t n, double nu, unsigned k);

/// Expectation 1 + (nu+1)/(nu+2) (n-1).
double osd_mean(const OsdParams& params);

/// Variance (nu+1)(nu+n+1)(n-1) / ((nu+2)^2 (nu+3)).
double osd_variance(const OsdParams& params);

/// Inverse-CDF sampling (binary search on the closed-form CDF),
/// deterministic for a given seed.
std::vector<std::uint32_t> osd_sample(const OsdParams& params, std::size_t count,
                                      std::uint64_t seed);

/// Density of the i-th order statistic of n uniforms:
/// u^(i-1) (1-u)^(n-i) / B(i, n-i+1).
double order_stat_density(double u, std::uint32_t i, std::uint32_t n);

}  // namespace tailstat
