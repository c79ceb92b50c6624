#include "tailstat/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tailstat/errors.hpp"
#include "tailstat/kahan.hpp"
#include "tailstat/parallel.hpp"
#include "tailstat/rng.hpp"

namespace tailstat {

namespace {

bool near_pole(double a) {
  return (a > 1.9 && a < 2.1) || (a > 2.9 && a < 3.1);
}

std::vector<double> trial_values(std::size_t n, const StatSpec& spec, std::size_t trials,
                                 std::uint64_t seed, unsigned threads) {
  std::vector<double> values(trials);
  parallel_for_index(trials, threads, [&](std::size_t t) {
    Rng rng = Rng::stream(seed, t);
    std::vector<double> u(n);
    for (double& v : u) v = rng.next_double();
    std::sort(u.begin(), u.end());
    const auto sample = OrderedUnitSample::from_sorted(std::move(u));
    values[t] = evaluate_stat(sample, spec).value;
  });
  return values;
}

McEstimate summarize(const std::vector<double>& values, std::size_t n, const StatSpec& spec,
                     std::uint64_t seed) {
  const std::size_t trials = values.size();
  KahanSum sum;
  for (double v : values) sum.add(v);
  const double mean = sum.value() / static_cast<double>(trials);
  KahanSum sq;
  for (double v : values) sq.add((v - mean) * (v - mean));
  const double var = sq.value() / static_cast<double>(trials - 1);
  McEstimate est;
  est.mean = mean;
  est.std_error = std::sqrt(var / static_cast<double>(trials));
  est.trials = trials;
  est.n = n;
  est.spec = spec;
  est.seed = seed;
  est.heavy_tail_warning = near_pole(spec.stress);
  return est;
}

}  // namespace

McEstimate simulate_risk(std::size_t n, const StatSpec& spec, std::size_t trials,
                         std::uint64_t seed, unsigned threads) {
  validate_spec(spec);
  if (!spec_evaluable(spec)) {
    throw divergent_error("simulate_risk: stress 3 has no evaluable statistic");
  }
  if (n < 1) throw std::invalid_argument("simulate_risk: n must be positive");
  if (trials < 2) throw std::invalid_argument("simulate_risk: need at least 2 trials");
  return summarize(trial_values(n, spec, trials, seed, threads), n, spec, seed);
}

std::vector<ProbePoint> divergence_probe(std::size_t n,
                                         const std::vector<std::size_t>& trial_schedule,
                                         std::uint64_t seed, unsigned threads) {
  if (trial_schedule.empty()) {
    throw std::invalid_argument("divergence_probe: empty trial schedule");
  }
  for (std::size_t i = 1; i < trial_schedule.size(); ++i) {
    if (trial_schedule[i] <= trial_schedule[i - 1]) {
      throw std::invalid_argument("divergence_probe: trial schedule must be increasing");
    }
  }
  const StatSpec spec{TailSide::lower, 2.0};
  const std::size_t max_trials = trial_schedule.back();
  const std::vector<double> values = trial_values(n, spec, max_trials, seed, threads);

  std::vector<ProbePoint> out;
  out.reserve(trial_schedule.size());
  for (std::size_t trials : trial_schedule) {
    if (trials < 2) throw std::invalid_argument("divergence_probe: schedule entries must be >= 2");
    std::vector<double> prefix(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(trials));
    ProbePoint point;
    point.estimate = summarize(prefix, n, spec, seed);
    point.max_value = *std::max_element(prefix.begin(), prefix.end());
    out.push_back(point);
  }
  return out;
}

}  // namespace tailstat
