#include "tailstat/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tailstat/gpd.hpp"

namespace tailstat {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("Sample: need at least one observation");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Sample: all observations must be finite");
    }
  }
}

OrderedUnitSample OrderedUnitSample::from_unsorted(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  return from_sorted(std::move(u));
}

OrderedUnitSample OrderedUnitSample::from_sorted(std::vector<double> u) {
  if (u.empty()) {
    throw std::invalid_argument("OrderedUnitSample: need at least one value");
  }
  double prev = 0.0;
  for (double v : u) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("OrderedUnitSample: values must lie in [0, 1]");
    }
    if (v < prev) {
      throw std::invalid_argument("OrderedUnitSample: values must be ascending");
    }
    prev = v;
  }
  return OrderedUnitSample(std::move(u));
}

ModelCdf::ModelCdf(Family family, double p0, double p1, double p2)
    : family_(family), p0_(p0), p1_(p1), p2_(p2) {}

ModelCdf ModelCdf::uniform(double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("ModelCdf::uniform: need hi > lo");
  return ModelCdf(Family::uniform, lo, hi, 0.0);
}

ModelCdf ModelCdf::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("ModelCdf::exponential: need rate > 0");
  return ModelCdf(Family::exponential, rate, 0.0, 0.0);
}

ModelCdf ModelCdf::normal(double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("ModelCdf::normal: need sigma > 0");
  return ModelCdf(Family::normal, mu, sigma, 0.0);
}

ModelCdf ModelCdf::gpd(double shape, double scale, double threshold) {
  if (!(scale > 0.0)) throw std::invalid_argument("ModelCdf::gpd: need scale > 0");
  return ModelCdf(Family::gpd, shape, scale, threshold);
}

double ModelCdf::operator()(double x) const {
  switch (family_) {
    case Family::uniform: {
      if (x <= p0_) return 0.0;
      if (x >= p1_) return 1.0;
      return (x - p0_) / (p1_ - p0_);
    }
    case Family::exponential: {
      if (x < 0.0) {
        throw std::domain_error("ModelCdf: exponential is supported on x >= 0");
      }
      return -std::expm1(-p0_ * x);
    }
    case Family::normal:
      return 0.5 * std::erfc(-(x - p0_) / (p1_ * std::sqrt(2.0)));
    case Family::gpd:
      return gpd_cdf(x, GpdParams{p0_, p1_, p2_});
  }
  throw std::logic_error("ModelCdf: unknown family");
}

double edf_value(const Sample& sample, double x) {
  std::size_t count = 0;
  for (double v : sample.values()) {
    if (v <= x) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(sample.size());
}

OrderedUnitSample to_ordered_unit(const Sample& sample, const ModelCdf& cdf) {
  std::vector<double> u;
  u.reserve(sample.size());
  for (double x : sample.values()) {
    double v = cdf(x);
    // Guard tiny numerical overshoot from the CDF evaluation.
    v = std::min(1.0, std::max(0.0, v));
    u.push_back(v);
  }
  return OrderedUnitSample::from_unsorted(std::move(u));
}

OrderedUnitSample reflect(const OrderedUnitSample& u) {
  const auto& v = u.values();
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    r[i] = 1.0 - v[v.size() - 1 - i];
  }
  return OrderedUnitSample::from_sorted(std::move(r));
}

}  // namespace tailstat
