#include "tailstat/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tailstat {

namespace {

void require_positive_finite(double x, const char* fn) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error(std::string(fn) + ": argument must be positive and finite, got " +
                            std::to_string(x));
  }
}

// Lanczos coefficients, g = 7, 9 terms (Godfrey). Relative error of the
// reconstructed gamma is below 1e-14 over the positive axis.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double ln_gamma_lanczos(double x) {
  // Valid for x >= 0.5; callers shift smaller arguments.
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  constexpr double half_ln_two_pi = 0.91893853320467274178;  // ln(2*pi)/2
  return half_ln_two_pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

double ln_gamma(double x) {
  require_positive_finite(x, "ln_gamma");
  if (x < 0.5) {
    // Gamma(x) = Gamma(x+1)/x
    return ln_gamma_lanczos(x + 1.0) - std::log(x);
  }
  return ln_gamma_lanczos(x);
}

double ln_beta(double p, double q) {
  require_positive_finite(p, "ln_beta");
  require_positive_finite(q, "ln_beta");
  return ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q);
}

double digamma(double x) {
  require_positive_finite(x, "digamma");
  double result = 0.0;
  // psi(x) = psi(x+1) - 1/x until the asymptotic range.
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic expansion with Bernoulli numbers B_2..B_12.
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  constexpr std::array<double, 6> kBernoulliOver2k = {
      1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0};
  double power = inv2;
  for (double c : kBernoulliOver2k) {
    series += c * power;
    power *= inv2;
  }
  return result + std::log(x) - 0.5 * inv - series;
}

namespace {

struct U128 {
  unsigned __int128 v;
};

// Triangle of exact Stirling numbers, grown on demand under a lock.
// Overflow of the 128-bit cells is recorded as a sentinel.
class StirlingTable {
 public:
  static constexpr unsigned kMaxK = 64;

  unsigned __int128 value(unsigned k, unsigned l) {
    if (k > kMaxK || l > kMaxK) {
      throw std::range_error("stirling2: arguments exceed the exactness bound (64)");
    }
    std::lock_guard<std::mutex> guard(mutex_);
    while (rows_.size() <= k) {
      grow_row();
    }
    if (l >= rows_[k].size()) return 0;
    const unsigned __int128 cell = rows_[k][l];
    if (cell == kOverflow) {
      throw std::range_error("stirling2: exact value overflows the integer range");
    }
    return cell;
  }

 private:
  static constexpr unsigned __int128 kOverflow = ~static_cast<unsigned __int128>(0);

  void grow_row() {
    const std::size_t k = rows_.size();
    std::vector<unsigned __int128> row(k + 1, 0);
    if (k == 0) {
      row[0] = 1;
    } else {
      const auto& prev = rows_[k - 1];
      row[0] = 0;
      for (std::size_t l = 1; l <= k; ++l) {
        const unsigned __int128 left = (l < prev.size()) ? prev[l] : 0;
        const unsigned __int128 diag = prev[l - 1];
        if (left == kOverflow || diag == kOverflow) {
          row[l] = kOverflow;
          continue;
        }
        // S(k, l) = l * S(k-1, l) + S(k-1, l-1), checked.
        unsigned __int128 mul = left * static_cast<unsigned __int128>(l);
        if (l != 0 && left != 0 && mul / l != left) {
          row[l] = kOverflow;
          continue;
        }
        unsigned __int128 sum = mul + diag;
        if (sum < mul) {
          row[l] = kOverflow;
          continue;
        }
        row[l] = sum;
      }
    }
    rows_.push_back(std::move(row));
  }

  std::mutex mutex_;
  std::vector<std::vector<unsigned __int128>> rows_;
};

StirlingTable& stirling_table() {
  static StirlingTable table;
  return table;
}

}  // namespace

std::uint64_t stirling2(unsigned k, unsigned l) {
  const unsigned __int128 v = stirling_table().value(k, l);
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw std::range_error("stirling2: exact value overflows the integer range");
  }
  return static_cast<std::uint64_t>(v);
}

namespace detail {

double stirling2_d(unsigned k, unsigned l) {
  const unsigned __int128 v = stirling_table().value(k, l);
  // Split into 64-bit halves so the conversion rounds once.
  const double hi = static_cast<double>(static_cast<std::uint64_t>(v >> 64));
  const double lo = static_cast<double>(static_cast<std::uint64_t>(v));
  return hi * 18446744073709551616.0 + lo;
}

}  // namespace detail

double falling_factorial(double x, unsigned l) {
  double product = 1.0;
  for (unsigned j = 0; j < l; ++j) {
    product *= x - static_cast<double>(j);
  }
  return product;
}

double rising_factorial(double x, unsigned l) {
  double product = 1.0;
  for (unsigned j = 0; j < l; ++j) {
    product *= x + static_cast<double>(j);
  }
  return product;
}

}  // namespace tailstat
