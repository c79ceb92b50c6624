#pragma once

#include <stdexcept>
#include <string>

namespace tailstat {

/// A statistic or risk evaluation hit a pole of the family (stress at 3,
/// or a divergent piece of the defining integral).
class divergent_error : public std::domain_error {
 public:
  explicit divergent_error(const std::string& what) : std::domain_error(what) {}
};

/// Not enough observations to carry out the requested fit or scan.
class insufficient_data_error : public std::runtime_error {
 public:
  explicit insufficient_data_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tailstat
