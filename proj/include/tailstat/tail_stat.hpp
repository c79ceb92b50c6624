#pragma once

#include <cstddef>

#include "tailstat/sample.hpp"

// The tail-weighted family of goodness-of-fit statistics: the discrepancy
// n * integral of (F_n(t) - t)^2 * w(t) dt on the unit interval with weight
// w(t) = t^(-a) (1-t)^(-b). Includes the classical Cramer-von Mises (a=b=0)
// and Anderson-Darling (a=b=1) members and a piecewise-analytic oracle for
// the defining integral.

namespace tailstat {

enum class TailSide { lower, upper, both };

/// One member of the statistic family: which tail carries the weight and
/// how strongly (the stress exponent). side == both is the Anderson-Darling
/// combination and requires stress == 1.
struct StatSpec {
  TailSide side = TailSide::lower;
  double stress = 0.0;
};

/// Throws std::invalid_argument for negative/non-finite stress or a
/// both-sided spec with stress != 1.
void validate_spec(const StatSpec& spec);

/// True unless the stress sits on the a = 3 pole (tolerance 1e-9).
bool spec_evaluable(const StatSpec& spec);

enum class StatBranch { general, a0_cvm, a1, a2, ad };

struct StatResult {
  double value = 0.0;
  std::size_t n = 0;
  StatSpec spec;
  StatBranch branch = StatBranch::general;
  int clamped = 0;  // singular-guard activations (exact zeros fed to ln/1/u)
};

/// Weight w(t) = t^(-a) (1-t)^(-b) for t in (0, 1).
double weight(double t, double a, double b);

/// Lower-tail statistic for stress a >= 0, a != 3 (throws divergent_error
/// at the pole). Dispatches to the a=1 / a=2 computing formulas within 1e-9
/// of those points, the general closed form otherwise.
StatResult lower_tail_stat(const OrderedUnitSample& u, double a);

/// Upper-tail statistic: the lower-tail statistic of the reflected sample.
StatResult upper_tail_stat(const OrderedUnitSample& u, double b);

/// Cramer-von Mises statistic, computed through its own closed form
/// 1/(12n) + sum ((2i-1)/(2n) - u_i)^2. Equals lower_tail_stat(u, 0).
StatResult cvm_stat(const OrderedUnitSample& u);

/// Anderson-Darling statistic as the sum of the two one-sided a = 1 members.
StatResult ad_stat(const OrderedUnitSample& u);

/// Dispatch on a StatSpec.
StatResult evaluate_stat(const OrderedUnitSample& u, const StatSpec& spec);

/// The defining integral n * int (F_n(t) - t)^2 t^(-a) (1-t)^(-b) dt,
/// integrated in closed form over each interval where F_n is constant.
/// Supports one-sided weights (b = 0 or a = 0) and the a = b = 1 split;
/// other mixed weights throw std::invalid_argument. Divergent pieces
/// (stress >= 3 at the touched endpoint, or a >= 1 with u_1 = 0) throw
/// divergent_error.
double quadrature_oracle(const OrderedUnitSample& u, double a, double b);

}  // namespace tailstat
