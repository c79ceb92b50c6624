#pragma once

#include <cstdint>

// Special functions and combinatorial primitives: log-gamma, log-beta,
// digamma, Stirling numbers of the second kind, falling/rising factorials.
// All functions are pure and safe for concurrent use.

namespace tailstat {

/// Natural log of the gamma function for x > 0 (Lanczos approximation).
/// Throws std::domain_error for non-positive or non-finite x.
double ln_gamma(double x);

/// ln B(p, q) = ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q), p, q > 0.
double ln_beta(double p, double q);

/// Digamma function psi(x) for x > 0.
/// Recurrence below 10, Bernoulli asymptotic series above.
double digamma(double x);

/// Stirling number of the second kind S(k, l), exact.
/// Requires k, l <= 64; throws std::range_error when the exact value does
/// not fit in 64 bits.
std::uint64_t stirling2(unsigned k, unsigned l);

/// Falling factorial x(x-1)...(x-l+1); empty product (l = 0) is 1.
double falling_factorial(double x, unsigned l);

/// Rising factorial x(x+1)...(x+l-1); empty product (l = 0) is 1.
double rising_factorial(double x, unsigned l);

namespace detail {

// S(k, l) as a double. Exact for values below 2^53; beyond that it carries
// the usual double rounding, which is what the moment formulas need.
// Throws std::range_error past the 128-bit exact triangle (k, l <= 64 only).
double stirling2_d(unsigned k, unsigned l);

}  // namespace detail

}  // namespace tailstat
