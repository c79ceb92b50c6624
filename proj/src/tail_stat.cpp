#include "tailstat/tail_stat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tailstat/errors.hpp"
#include "tailstat/kahan.hpp"

namespace tailstat {

namespace {

// Dispatch tolerance around the removable parameter singularities of the
// general computing formula.
constexpr double kBranchTol = 1e-9;
// Exact zeros fed into ln(u) or negative powers are nudged here.
constexpr double kSingularGuard = 1e-300;

bool near(double a, double k) { return std::abs(a - k) < kBranchTol; }

struct Eval {
  double value = 0.0;
  int clamped = 0;
  StatBranch branch = StatBranch::general;
};

// The lower-tail computing formulas on raw ordered unit values.
Eval eval_lower(const std::vector<double>& u, double a) {
  if (!(std::isfinite(a) && a >= 0.0)) {
    throw std::domain_error("lower_tail_stat: stress must be finite and >= 0");
  }
  if (near(a, 3.0)) {
    throw divergent_error("divergent statistic: the family has no finite value at stress 3");
  }
  const double n = static_cast<double>(u.size());
  Eval out;

  if (near(a, 1.0)) {
    out.branch = StatBranch::a1;
    KahanSum sum;
    sum.add(-1.5 * n);
    for (std::size_t i = 0; i < u.size(); ++i) {
      double v = u[i];
      if (v == 0.0) {
        v = kSingularGuard;
        ++out.clamped;
      }
      const double rank = 2.0 * static_cast<double>(i + 1) - 1.0;
      sum.add(2.0 * v);
      sum.add(-(rank / n) * std::log(v));
    }
    out.value = sum.value();
    return out;
  }

  if (near(a, 2.0)) {
    out.branch = StatBranch::a2;
    KahanSum sum;
    for (std::size_t i = 0; i < u.size(); ++i) {
      double v = u[i];
      if (v == 0.0) {
        v = kSingularGuard;
        ++out.clamped;
      }
      const double rank = 2.0 * static_cast<double>(i + 1) - 1.0;
      sum.add((rank / n) / v);
      sum.add(2.0 * std::log(v));
    }
    out.value = sum.value();
    return out;
  }

  out.branch = StatBranch::general;
  KahanSum sum;
  sum.add(2.0 * n / ((1.0 - a) * (2.0 - a) * (3.0 - a)));
  for (std::size_t i = 0; i < u.size(); ++i) {
    double v = u[i];
    if (v == 0.0 && a > 1.0) {
      v = kSingularGuard;  // negative power of an exact zero
      ++out.clamped;
    }
    const double rank = 2.0 * static_cast<double>(i + 1) - 1.0;
    sum.add(2.0 / (2.0 - a) * std::pow(v, 2.0 - a));
    sum.add(-(rank / n) / (1.0 - a) * std::pow(v, 1.0 - a));
  }
  out.value = sum.value();
  return out;
}

}  // namespace

void validate_spec(const StatSpec& spec) {
  if (!(std::isfinite(spec.stress) && spec.stress >= 0.0)) {
    throw std::invalid_argument("StatSpec: stress must be finite and >= 0");
  }
  if (spec.side == TailSide::both && !near(spec.stress, 1.0)) {
    throw std::invalid_argument(
        "StatSpec: both-sided weights are supported only for the Anderson-Darling member "
        "(stress 1)");
  }
}

bool spec_evaluable(const StatSpec& spec) {
  return !near(spec.stress, 3.0);
}

double weight(double t, double a, double b) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::domain_error("weight: t must lie strictly inside (0, 1)");
  }
  return std::pow(t, -a) * std::pow(1.0 - t, -b);
}

StatResult lower_tail_stat(const OrderedUnitSample& u, double a) {
  const Eval e = eval_lower(u.values(), a);
  return StatResult{e.value, u.size(), StatSpec{TailSide::lower, a}, e.branch, e.clamped};
}

StatResult upper_tail_stat(const OrderedUnitSample& u, double b) {
  const Eval e = eval_lower(reflect(u).values(), b);
  return StatResult{e.value, u.size(), StatSpec{TailSide::upper, b}, e.branch, e.clamped};
}

StatResult cvm_stat(const OrderedUnitSample& u) {
  const auto& v = u.values();
  const double n = static_cast<double>(v.size());
  KahanSum sum;
  sum.add(1.0 / (12.0 * n));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = (2.0 * static_cast<double>(i + 1) - 1.0) / (2.0 * n) - v[i];
    sum.add(d * d);
  }
  return StatResult{sum.value(), v.size(), StatSpec{TailSide::lower, 0.0}, StatBranch::a0_cvm, 0};
}

StatResult ad_stat(const OrderedUnitSample& u) {
  const StatResult lo = lower_tail_stat(u, 1.0);
  const StatResult hi = upper_tail_stat(u, 1.0);
  return StatResult{lo.value + hi.value, u.size(), StatSpec{TailSide::both, 1.0}, StatBranch::ad,
                    lo.clamped + hi.clamped};
}

StatResult evaluate_stat(const OrderedUnitSample& u, const StatSpec& spec) {
  validate_spec(spec);
  switch (spec.side) {
    case TailSide::lower:
      return lower_tail_stat(u, spec.stress);
    case TailSide::upper:
      return upper_tail_stat(u, spec.stress);
    case TailSide::both:
      return ad_stat(u);
  }
  throw std::logic_error("evaluate_stat: unknown side");
}

namespace {

// int_{lo}^{hi} t^p dt for 0 <= lo <= hi <= 1, stable across p+1 -> 0.
double power_piece(double p, double lo, double hi) {
  if (lo == hi) return 0.0;
  const double q = p + 1.0;
  if (lo == 0.0) {
    if (q < 1e-12) {
      throw divergent_error("quadrature_oracle: divergent piece at the zero endpoint");
    }
    return std::pow(hi, q) / q;
  }
  const double l = std::log(hi / lo);
  if (q == 0.0) return l;
  // (hi^q - lo^q)/q = lo^q expm1(q log(hi/lo)) / q, no cancellation.
  return std::exp(q * std::log(lo)) * std::expm1(q * l) / q;
}

double oracle_lower(const std::vector<double>& u, double a) {
  if (!(std::isfinite(a) && a >= 0.0)) {
    throw std::domain_error("quadrature_oracle: stress must be finite and >= 0");
  }
  const std::size_t n = u.size();
  const double dn = static_cast<double>(n);
  KahanSum total;
  for (std::size_t k = 0; k <= n; ++k) {
    const double lo = (k == 0) ? 0.0 : u[k - 1];
    const double hi = (k == n) ? 1.0 : u[k];
    if (lo == hi) continue;
    const double c = static_cast<double>(k) / dn;
    // (c - t)^2 t^(-a) expanded in powers of t.
    if (c != 0.0) {
      total.add(c * c * power_piece(-a, lo, hi));
      total.add(-2.0 * c * power_piece(1.0 - a, lo, hi));
    }
    total.add(power_piece(2.0 - a, lo, hi));
  }
  return dn * total.value();
}

}  // namespace

double quadrature_oracle(const OrderedUnitSample& u, double a, double b) {
  const bool has_a = a != 0.0;
  const bool has_b = b != 0.0;
  if (!has_b) {
    return oracle_lower(u.values(), a);
  }
  if (!has_a) {
    return oracle_lower(reflect(u).values(), b);
  }
  if (a == 1.0 && b == 1.0) {
    // 1/(t(1-t)) = 1/t + 1/(1-t)
    return oracle_lower(u.values(), 1.0) + oracle_lower(reflect(u).values(), 1.0);
  }
  throw std::invalid_argument(
      "quadrature_oracle: mixed weights are supported only for a = b = 1");
}

}  // namespace tailstat
