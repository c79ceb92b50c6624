#pragma once

#include <cstddef>
#include <vector>

// Sample handling: ordering, the empirical distribution function, and the
// probability-integral transform onto [0, 1].

namespace tailstat {

/// A batch of finite real observations, n >= 1. Immutable once built.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// Ascending values in [0, 1], typically F(x_(i)) for a model CDF F.
class OrderedUnitSample {
 public:
  /// Sorts, validates the [0, 1] range.
  static OrderedUnitSample from_unsorted(std::vector<double> u);
  /// Validates order and range without sorting.
  static OrderedUnitSample from_sorted(std::vector<double> u);

  const std::vector<double>& values() const { return u_; }
  std::size_t size() const { return u_.size(); }

 private:
  explicit OrderedUnitSample(std::vector<double> u) : u_(std::move(u)) {}
  std::vector<double> u_;
};

/// A named continuous model CDF used for the probability-integral transform.
class ModelCdf {
 public:
  static ModelCdf uniform(double lo, double hi);
  static ModelCdf exponential(double rate);
  static ModelCdf normal(double mu, double sigma);
  static ModelCdf gpd(double shape, double scale, double threshold);

  /// F(x) in [0, 1]. Throws std::domain_error outside the model's domain.
  double operator()(double x) const;

 private:
  enum class Family { uniform, exponential, normal, gpd };
  ModelCdf(Family family, double p0, double p1, double p2);

  Family family_;
  double p0_, p1_, p2_;
};

/// Empirical distribution function: #{X_i <= x} / n (right-continuous).
double edf_value(const Sample& sample, double x);

/// PIT: sorted F(x_(i)). Ties in the sample are kept.
OrderedUnitSample to_ordered_unit(const Sample& sample, const ModelCdf& cdf);

/// The reflected sample u'_(i) = 1 - u_(n+1-i).
OrderedUnitSample reflect(const OrderedUnitSample& u);

}  // namespace tailstat
