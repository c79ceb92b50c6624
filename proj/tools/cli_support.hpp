#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tailstat/rational.hpp"

// CLI-side plumbing: CSV ingestion, deterministic JSON/CSV emission,
// grid parsing. Exit code contract: 0 success, 2 input/parse error,
// 3 domain/statistical error.

namespace tailstat::cli {

/// Input-side failure (malformed file, bad flag combination): exit code 2.
class cli_error : public std::runtime_error {
 public:
  explicit cli_error(const std::string& what) : std::runtime_error(what) {}
};

/// One numeric value per line; a non-numeric first line is treated as a
/// header. Throws cli_error with a line-numbered message.
std::vector<double> read_value_csv(const std::string& path);

/// Format a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// Deterministic JSON dump: 2-space indent, 17-significant-digit floats.
std::string dump_json(const nlohmann::ordered_json& j);

/// Parse "start:stop:step" into an inclusive ascending grid. Exact rational
/// stepping, so grid points land on poles exactly. Throws cli_error on
/// malformed specs.
std::vector<Rational> parse_grid_spec(const std::string& spec);

/// Parse a comma list or start:stop:step grid of doubles.
std::vector<double> parse_candidate_list(const std::string& spec);

/// Default seed: TAILSTAT_SEED environment variable, else 0.
std::uint64_t default_seed();

}  // namespace tailstat::cli
