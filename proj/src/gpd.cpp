#include "tailstat/gpd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tailstat/errors.hpp"

namespace tailstat {

namespace {

constexpr double kShapeZeroTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double gpd_cdf(double x, const GpdParams& params) {
  if (x < params.threshold) {
    throw std::domain_error("gpd_cdf: x below threshold");
  }
  const double y = x - params.threshold;
  if (std::abs(params.shape) < kShapeZeroTol) {
    return -std::expm1(-y / params.scale);
  }
  const double z = params.shape * y / params.scale;
  if (z <= -1.0) return 1.0;  // beyond the finite endpoint for shape < 0
  return -std::expm1(-std::log1p(z) / params.shape);
}

double gpd_quantile(double p, const GpdParams& params) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::domain_error("gpd_quantile: p must lie in [0, 1)");
  }
  if (std::abs(params.shape) < kShapeZeroTol) {
    return params.threshold - params.scale * std::log1p(-p);
  }
  return params.threshold +
         params.scale / params.shape * std::expm1(-params.shape * std::log1p(-p));
}

double gpd_loglik(const std::vector<double>& excesses, double shape, double scale) {
  if (!(scale > 0.0)) return -kInf;
  const double m = static_cast<double>(excesses.size());
  double ll = -m * std::log(scale);
  if (std::abs(shape) < kShapeZeroTol) {
    double sum = 0.0;
    for (double y : excesses) sum += y;
    return ll - sum / scale;
  }
  const double c = 1.0 + 1.0 / shape;
  for (double y : excesses) {
    const double z = shape * y / scale;
    if (z <= -1.0) return -kInf;
    ll -= c * std::log1p(z);
  }
  return ll;
}

std::vector<double> gpd_sample(const GpdParams& params, std::size_t count, Rng& rng) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = gpd_quantile(rng.next_double(), params);
  }
  return out;
}

namespace {

// Objective on theta = (shape, log scale): negative log-likelihood.
struct Objective {
  const std::vector<double>& y;

  double operator()(const std::array<double, 2>& theta) const {
    return -gpd_loglik(y, theta[0], std::exp(theta[1]));
  }

  std::array<double, 2> gradient(const std::array<double, 2>& theta) const {
    // Central differences; the surface is smooth inside the feasible region
    // and two parameters keep this cheap.
    std::array<double, 2> g{};
    for (int i = 0; i < 2; ++i) {
      const double h = 1e-6 * (1.0 + std::abs(theta[i]));
      auto up = theta, dn = theta;
      up[i] += h;
      dn[i] -= h;
      const double fu = (*this)(up);
      const double fd = (*this)(dn);
      if (std::isfinite(fu) && std::isfinite(fd)) {
        g[i] = (fu - fd) / (2.0 * h);
      } else if (std::isfinite(fd)) {
        g[i] = ((*this)(theta)-fd) / h;
      } else if (std::isfinite(fu)) {
        g[i] = (fu - (*this)(theta)) / h;
      } else {
        g[i] = 0.0;
      }
    }
    return g;
  }
};

std::array<double, 2> clamp_box(std::array<double, 2> theta, const std::array<double, 2>& lo,
                                const std::array<double, 2>& hi) {
  for (int i = 0; i < 2; ++i) theta[i] = std::min(hi[i], std::max(lo[i], theta[i]));
  return theta;
}

}  // namespace

GpdFit gpd_fit_mle(const std::vector<double>& excesses, std::size_t min_count) {
  if (excesses.size() < min_count) {
    throw insufficient_data_error("gpd_fit_mle: need at least " + std::to_string(min_count) +
                                  " excesses, got " + std::to_string(excesses.size()));
  }
  double sum = 0.0;
  for (double y : excesses) {
    if (!(y > 0.0) || !std::isfinite(y)) {
      throw std::invalid_argument("gpd_fit_mle: excesses must be positive and finite");
    }
    sum += y;
  }
  const double m = static_cast<double>(excesses.size());
  const double mean = sum / m;
  double var = 0.0;
  for (double y : excesses) var += (y - mean) * (y - mean);
  var /= (m - 1.0);
  if (!(var > 0.0)) {
    throw std::invalid_argument("gpd_fit_mle: degenerate (constant) excesses");
  }

  // Hosking-Wallis moment start: shape = (1 - mean^2/var)/2, scale = mean(1 - shape).
  double shape0 = 0.5 * (1.0 - mean * mean / var);
  shape0 = std::min(0.9, std::max(-0.4, shape0));
  const double scale0 = std::max(mean * (1.0 - shape0), 1e-12 * mean);

  const Objective obj{excesses};
  const std::array<double, 2> lo{-0.99, std::log(mean) - 20.0};
  const std::array<double, 2> hi{5.0, std::log(mean) + 20.0};

  std::array<double, 2> theta{shape0, std::log(scale0)};
  double f = obj(theta);
  if (!std::isfinite(f)) {
    // Moment start can be infeasible for heavy negative shapes; exponential
    // start is always interior.
    theta = {0.0, std::log(mean)};
    f = obj(theta);
  }
  const double f_start = f;

  // BFGS with backtracking line search, box-clamped trial points.
  std::array<std::array<double, 2>, 2> H{{{1.0, 0.0}, {0.0, 1.0}}};
  auto grad = obj.gradient(theta);
  bool converged = false;
  int iter = 0;
  constexpr int kMaxIter = 200;
  for (; iter < kMaxIter; ++iter) {
    const double gnorm = std::hypot(grad[0], grad[1]);
    if (gnorm < 1e-8 * (1.0 + std::abs(f))) {
      converged = true;
      break;
    }
    std::array<double, 2> dir{-(H[0][0] * grad[0] + H[0][1] * grad[1]),
                              -(H[1][0] * grad[0] + H[1][1] * grad[1])};
    double slope = dir[0] * grad[0] + dir[1] * grad[1];
    if (slope >= 0.0) {  // reset to steepest descent
      H = {{{1.0, 0.0}, {0.0, 1.0}}};
      dir = {-grad[0], -grad[1]};
      slope = -(grad[0] * grad[0] + grad[1] * grad[1]);
    }
    double step = 1.0;
    std::array<double, 2> next = theta;
    double f_next = f;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      next = clamp_box({theta[0] + step * dir[0], theta[1] + step * dir[1]}, lo, hi);
      f_next = obj(next);
      if (std::isfinite(f_next) && f_next <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    const std::array<double, 2> grad_next = obj.gradient(next);
    const std::array<double, 2> s{next[0] - theta[0], next[1] - theta[1]};
    const std::array<double, 2> yv{grad_next[0] - grad[0], grad_next[1] - grad[1]};
    const double sy = s[0] * yv[0] + s[1] * yv[1];
    if (sy > 1e-12) {
      // BFGS inverse-Hessian update.
      const double rho = 1.0 / sy;
      const std::array<double, 2> Hy{H[0][0] * yv[0] + H[0][1] * yv[1],
                                     H[1][0] * yv[0] + H[1][1] * yv[1]};
      const double yHy = yv[0] * Hy[0] + yv[1] * Hy[1];
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          H[i][j] += (sy + yHy) * rho * rho * s[i] * s[j] - rho * (Hy[i] * s[j] + s[i] * Hy[j]);
        }
      }
    }
    const double decrease = f - f_next;
    theta = next;
    f = f_next;
    grad = grad_next;
    if (decrease < 1e-12 * (1.0 + std::abs(f))) {
      converged = true;
      break;
    }
  }

  GpdFit fit;
  fit.params = GpdParams{theta[0], std::exp(theta[1]), 0.0};
  fit.loglik = -f;
  fit.converged = converged && f <= f_start + 1e-12;
  fit.iterations = iter;
  return fit;
}

}  // namespace tailstat
