#include "tailstat/osd.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tailstat/kahan.hpp"
#include "tailstat/rng.hpp"
#include "tailstat/special.hpp"

namespace tailstat {

namespace {

constexpr double kNuFloor = -1.0 + 1e-9;

void check_index(std::uint32_t i, std::uint32_t n, const char* fn) {
  if (i < 1 || i > n) {
    throw std::domain_error(std::string(fn) + ": index must lie in [1, n]");
  }
}

// ln of B(i+nu, n-i+1)/B(i, n-i+1); all beta ratios go through ln_beta
// differences so large n cannot overflow.
double ln_beta_ratio(std::uint32_t n, double nu, std::uint32_t i) {
  const double di = static_cast<double>(i);
  const double tail = static_cast<double>(n - i) + 1.0;
  return ln_beta(di + nu, tail) - ln_beta(di, tail);
}

}  // namespace

void validate_osd(const OsdParams& params) {
  if (params.n < 1) {
    throw std::domain_error("OsdParams: n must be a positive integer");
  }
  if (!(std::isfinite(params.nu) && params.nu >= kNuFloor)) {
    throw std::domain_error("OsdParams: nu must be finite and > -1");
  }
}

double osd_pmf(const OsdParams& params, std::uint32_t i) {
  validate_osd(params);
  check_index(i, params.n, "osd_pmf");
  const double ln_p = std::log((params.nu + 1.0) / static_cast<double>(params.n)) +
                      ln_beta_ratio(params.n, params.nu, i);
  return std::exp(ln_p);
}

double osd_pmf_alt(const OsdParams& params, std::uint32_t i) {
  validate_osd(params);
  check_index(i, params.n, "osd_pmf_alt");
  // Gamma(n)/Gamma(i) * (nu+1) / (nu+i)^(rising n-i+1), the rising factorial
  // accumulated as a log product.
  KahanSum ln_rising;
  const double base = params.nu + static_cast<double>(i);
  for (std::uint32_t j = 0; j <= params.n - i; ++j) {
    ln_rising.add(std::log(base + static_cast<double>(j)));
  }
  const double ln_p = ln_gamma(static_cast<double>(params.n)) -
                      ln_gamma(static_cast<double>(i)) + std::log(params.nu + 1.0) -
                      ln_rising.value();
  return std::exp(ln_p);
}

double osd_cdf(const OsdParams& params, std::uint32_t s) {
  validate_osd(params);
  check_index(s, params.n, "osd_cdf");
  const double np1 = params.nu + 1.0;
  return std::exp(ln_beta(static_cast<double>(params.n), np1) -
                  ln_beta(static_cast<double>(s), np1));
}

double osd_moment(const OsdParams& params, unsigned k) {
  validate_osd(params);
  if (k > 32) {
    throw std::domain_error("osd_moment: k must not exceed 32");
  }
  const double np1 = params.nu + 1.0;
  const double nm1 = static_cast<double>(params.n) - 1.0;
  KahanSum sum;
  for (unsigned l = 0; l <= k; ++l) {
    sum.add(detail::stirling2_d(k + 1, l + 1) * (np1 / (np1 + static_cast<double>(l))) *
            falling_factorial(nm1, l));
  }
  return sum.value();
}

double m_k_direct(std::uint32_t n, double nu, unsigned k) {
  validate_osd(OsdParams{n, nu});
  KahanSum sum;
  for (std::uint32_t i = 1; i <= n; ++i) {
    sum.add(std::pow(static_cast<double>(i), static_cast<double>(k)) *
            std::exp(ln_beta_ratio(n, nu, i)));
  }
  return (nu + 1.0) / static_cast<double>(n) * sum.value();
}

double osd_mean(const OsdParams& params) {
  validate_osd(params);
  const double np1 = params.nu + 1.0;
  return 1.0 + np1 / (np1 + 1.0) * (static_cast<double>(params.n) - 1.0);
}

double osd_variance(const OsdParams& params) {
  validate_osd(params);
  const double nu = params.nu;
  const double n = static_cast<double>(params.n);
  return (nu + 1.0) * (nu + n + 1.0) * (n - 1.0) / ((nu + 2.0) * (nu + 2.0) * (nu + 3.0));
}

std::vector<std::uint32_t> osd_sample(const OsdParams& params, std::size_t count,
                                      std::uint64_t seed) {
  validate_osd(params);
  std::vector<std::uint32_t> out(count);
  Rng rng = Rng::stream(seed, 0);
  for (std::size_t t = 0; t < count; ++t) {
    const double u = rng.next_double();
    // Smallest s with F(s) >= u.
    std::uint32_t lo = 1, hi = params.n;
    while (lo < hi) {
      const std::uint32_t mid = lo + (hi - lo) / 2;
      if (osd_cdf(params, mid) >= u) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    out[t] = lo;
  }
  return out;
}

double order_stat_density(double u, std::uint32_t i, std::uint32_t n) {
  if (n < 1) throw std::domain_error("order_stat_density: n must be positive");
  check_index(i, n, "order_stat_density");
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("order_stat_density: u must lie in [0, 1]");
  }
  const double di = static_cast<double>(i);
  const double dn = static_cast<double>(n);
  if (u == 0.0) return (i == 1) ? dn : 0.0;
  if (u == 1.0) return (i == n) ? dn : 0.0;
  return std::exp((di - 1.0) * std::log(u) + (dn - di) * std::log1p(-u) -
                  ln_beta(di, dn - di + 1.0));
}

}  // namespace tailstat
