#include "tailstat/risk.hpp"

#include <cmath>
#include <stdexcept>

namespace tailstat {

namespace {

// Same tolerance as the statistic branch dispatch, so a stress that is
// evaluable as a statistic is exactly the one with finite risk at 1.
constexpr double kPoleTol = 1e-9;

void require_valid_stress(double a, const char* fn) {
  if (!(std::isfinite(a) && a >= 0.0)) {
    throw std::domain_error(std::string(fn) + ": stress must be finite and >= 0");
  }
}

}  // namespace

RiskValue risk_lower(double a) {
  require_valid_stress(a, "risk_lower");
  if (std::abs(a - 2.0) < kPoleTol || std::abs(a - 3.0) < kPoleTol) {
    return RiskValue::divergent();
  }
  return RiskValue::finite(1.0 / ((2.0 - a) * (3.0 - a)));
}

RiskValue risk_upper(double b) {
  require_valid_stress(b, "risk_upper");
  if (std::abs(b - 2.0) < kPoleTol || std::abs(b - 3.0) < kPoleTol) {
    return RiskValue::divergent();
  }
  return RiskValue::finite(1.0 / ((2.0 - b) * (3.0 - b)));
}

RiskValue risk_named(NamedStat which) {
  switch (which) {
    case NamedStat::cvm:
      return RiskValue::finite(1.0 / 6.0);
    case NamedStat::ad:
      return RiskValue::finite(risk_lower(1.0).value + risk_upper(1.0).value);
    case NamedStat::al:
      return RiskValue::finite(0.5);
  }
  throw std::logic_error("risk_named: unknown statistic");
}

std::vector<std::pair<double, RiskValue>> risk_curve(const std::vector<double>& stress_grid) {
  std::vector<std::pair<double, RiskValue>> out;
  out.reserve(stress_grid.size());
  for (double a : stress_grid) {
    out.emplace_back(a, risk_lower(a));
  }
  return out;
}

ExactRisk risk_lower_exact(const Rational& a) {
  if (a.to_double() < 0.0) {
    throw std::domain_error("risk_lower: stress must be >= 0");
  }
  const Rational two(2), three(3);
  const Rational d1 = two - a;
  const Rational d2 = three - a;
  if (d1.is_zero() || d2.is_zero()) {
    return ExactRisk{true, Rational()};
  }
  return ExactRisk{false, Rational(1) / (d1 * d2)};
}

ExactRisk risk_upper_exact(const Rational& b) { return risk_lower_exact(b); }

ExactRisk risk_named_exact(NamedStat which) {
  switch (which) {
    case NamedStat::cvm:
      return ExactRisk{false, Rational(1, 6)};
    case NamedStat::ad:
      return ExactRisk{false, Rational(1)};
    case NamedStat::al:
      return ExactRisk{false, Rational(1, 2)};
  }
  throw std::logic_error("risk_named_exact: unknown statistic");
}

RiskValue risk_of_spec(const StatSpec& spec) {
  validate_spec(spec);
  switch (spec.side) {
    case TailSide::lower:
      return risk_lower(spec.stress);
    case TailSide::upper:
      return risk_upper(spec.stress);
    case TailSide::both: {
      const RiskValue lo = risk_lower(spec.stress);
      const RiskValue hi = risk_upper(spec.stress);
      if (lo.is_divergent() || hi.is_divergent()) return RiskValue::divergent();
      return RiskValue::finite(lo.value + hi.value);
    }
  }
  throw std::logic_error("risk_of_spec: unknown side");
}

}  // namespace tailstat
