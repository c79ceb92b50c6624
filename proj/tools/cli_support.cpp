#include "cli_support.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tailstat/rational.hpp"

namespace tailstat::cli {

namespace {

bool parse_number(const std::string& token, double& out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0';
}

std::string trim(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

void escape_string(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void dump_node(const nlohmann::ordered_json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        escape_string(it.key(), out);
        out += ": ";
        dump_node(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_node(item, out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::string:
      escape_string(j.get<std::string>(), out);
      return;
    case nlohmann::json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case nlohmann::json::value_t::null:
      out += "null";
      return;
    case nlohmann::json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case nlohmann::json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::vector<double> read_value_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw cli_error("cannot open input file: " + path);
  }
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string token = trim(line);
    if (token.empty()) continue;
    double v = 0.0;
    if (!parse_number(token, v)) {
      if (first_content_line) {
        first_content_line = false;  // header row
        continue;
      }
      throw cli_error(path + ": line " + std::to_string(line_no) + ": cannot parse '" + token +
                      "' as a number");
    }
    first_content_line = false;
    values.push_back(v);
  }
  if (values.empty()) {
    throw cli_error(path + ": no numeric values found");
  }
  return values;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string dump_json(const nlohmann::ordered_json& j) {
  std::string out;
  dump_node(j, out, 0);
  out += "\n";
  return out;
}

std::vector<Rational> parse_grid_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) {
    throw cli_error("grid must have the form start:stop:step, got '" + spec + "'");
  }
  const auto start = Rational::parse_decimal(parts[0]);
  const auto stop = Rational::parse_decimal(parts[1]);
  const auto step = Rational::parse_decimal(parts[2]);
  if (!start || !stop || !step) {
    throw cli_error("grid endpoints must be decimal numbers: '" + spec + "'");
  }
  if (step->to_double() <= 0.0) {
    throw cli_error("grid step must be positive");
  }
  if (stop->to_double() < start->to_double()) {
    throw cli_error("grid stop must not be below start");
  }
  std::vector<Rational> out;
  Rational point = *start;
  // Inclusive endpoints; exact rational stepping keeps points on integers.
  while (point.to_double() <= stop->to_double() + 1e-15) {
    out.push_back(point);
    point = point + *step;
    if (out.size() > 2000000) throw cli_error("grid has too many points");
  }
  return out;
}

std::vector<double> parse_candidate_list(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    for (const auto& r : parse_grid_spec(spec)) {
      out.push_back(r.to_double());
    }
    return out;
  }
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    double v = 0.0;
    const std::string token = trim(part);
    if (!parse_number(token, v)) {
      throw cli_error("cannot parse candidate '" + token + "' as a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw cli_error("empty candidate list");
  return out;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("TAILSTAT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw cli_error("TAILSTAT_SEED must be an unsigned integer");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace tailstat::cli
