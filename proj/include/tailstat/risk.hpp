#pragma once

#include <utility>
#include <vector>

#include "tailstat/rational.hpp"
#include "tailstat/tail_stat.hpp"

// Closed-form risk (expected statistic value over all samples of size n):
// 1/((2-a)(3-a)) for every sample size, with poles at stress 2 and 3.

namespace tailstat {

struct RiskValue {
  enum class Kind { finite, divergent };
  Kind kind = Kind::finite;
  double value = 0.0;  // meaningful only when finite

  bool is_divergent() const { return kind == Kind::divergent; }

  static RiskValue finite(double v) { return RiskValue{Kind::finite, v}; }
  static RiskValue divergent() { return RiskValue{Kind::divergent, 0.0}; }
};

/// Exact counterpart used when the stress arrives as a rational (CLI
/// integer or decimal input).
struct ExactRisk {
  bool divergent = false;
  Rational value;  // meaningful only when !divergent
};

enum class NamedStat { cvm, ad, al };

/// 1/((2-a)(3-a)); divergent within 1e-9 of the poles. a < 0 is a domain error.
RiskValue risk_lower(double a);
/// Same formula with the upper-tail stress b.
RiskValue risk_upper(double b);
/// cvm -> 1/6, ad -> 1, al (the stress-1 single-tail member) -> 1/2.
RiskValue risk_named(NamedStat which);
/// Pointwise risk_lower over an ascending stress grid.
std::vector<std::pair<double, RiskValue>> risk_curve(const std::vector<double>& stress_grid);

ExactRisk risk_lower_exact(const Rational& a);
ExactRisk risk_upper_exact(const Rational& b);
ExactRisk risk_named_exact(NamedStat which);

/// Risk of the given spec: the one-sided closed form, or their sum for the
/// both-sided Anderson-Darling member.
RiskValue risk_of_spec(const StatSpec& spec);

}  // namespace tailstat
