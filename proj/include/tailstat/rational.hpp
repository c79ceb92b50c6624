#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tailstat {

// Exact rational arithmetic for the closed-form risk constants. Small by
// design: 64-bit numerator/denominator with checked 128-bit intermediates;
// overflow throws std::overflow_error so callers can fall back to doubles.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Parse "3", "-1.25", "0.5" into an exact rational. Empty on malformed
  /// input or more than 18 decimal places.
  static std::optional<Rational> parse_decimal(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws std::domain_error on zero

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool is_zero() const { return num_ == 0; }

  double to_double() const;
  /// "5/2", "-4", "0"
  std::string to_string() const;

 private:
  static Rational from_i128(__int128 num, __int128 den);
  std::int64_t num_;
  std::int64_t den_;  // > 0
};

}  // namespace tailstat
