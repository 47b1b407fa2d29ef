#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "common.hpp"

namespace kinstatic {

enum class OutputFormat
{
  json,
  csv,
  table
};

inline OutputFormat parse_output_format(const std::string& s)
{
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  if (s == "table") return OutputFormat::table;
  throw Error("unknown output format '" + s + "' (expected json, csv or table)");
}

struct Config
{
  double tolerance = kDefaultTol;
  double classify_tol = kDefaultClassifyTol;
  OutputFormat format = OutputFormat::json;
  bool format_set = false;
  std::uint64_t seed = 42;
  int trials = 1000;

  void validate() const
  {
    if (!(tolerance >= 0.0)) throw Error("tolerance must be >= 0");
    if (!(classify_tol >= 0.0)) throw Error("classify_tol must be >= 0");
    if (trials < 1) throw Error("trials must be >= 1");
  }
};

namespace detail {

inline std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace detail

/**
 * Reads `key = value` lines into `cfg`. Text after an unquoted '#' is a
 * comment, blank lines are skipped and values may be double-quoted.
 * Recognized keys: tolerance, classify_tol, format, seed, trials.
 */
inline void load_config(std::istream& in, Config& cfg)
{
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    const std::string s = detail::trim(line);
    if (s.empty()) {
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = detail::trim(s.substr(0, eq));
    std::string value = detail::trim(s.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    try {
      std::size_t used = 0;
      if (key == "tolerance") {
        cfg.tolerance = std::stod(value, &used);
      } else if (key == "classify_tol") {
        cfg.classify_tol = std::stod(value, &used);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value, &used);
      } else if (key == "trials") {
        cfg.trials = std::stoi(value, &used);
      } else if (key == "format") {
        cfg.format = parse_output_format(value);
        cfg.format_set = true;
        used = value.size();
      } else {
        throw Error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
      if (used != value.size()) {
        throw Error("config line " + std::to_string(lineno) + ": trailing characters in value of '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw Error("config line " + std::to_string(lineno) + ": bad value '" + value + "' for '" + key + "'");
    }
  }
  cfg.validate();
}

inline void load_config_file(const std::string& path, Config& cfg)
{
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open config file " + path);
  }
  load_config(in, cfg);
}

} // namespace kinstatic
