#pragma once

// Case records, report serialization and CSV helpers.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace toda {

/// One verified quantity. `comparison` says how pass is decided:
///   "le"    error <= tolerance
///   "range" tolerance_lo <= measured <= tolerance
///   "min"   measured >= tolerance
struct CaseResult {
  std::string suite;
  std::string id;
  std::string comparison = "le";
  double measured = 0;
  double expected = 0;
  double error = 0;
  double tolerance = 0;
  double tolerance_lo = 0;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();

  static CaseResult error_le(std::string suite, std::string id, double measured, double expected, double error,
                             double tolerance) {
    CaseResult c{std::move(suite), std::move(id), "le", measured, expected, error, tolerance};
    c.pass = error <= tolerance;
    return c;
  }
  static CaseResult relative(std::string suite, std::string id, double measured, double expected, double tolerance) {
    const double ref = expected != 0 ? std::abs(expected) : 1.0;
    return error_le(std::move(suite), std::move(id), measured, expected, std::abs(measured - expected) / ref, tolerance);
  }
  static CaseResult range(std::string suite, std::string id, double measured, double expected, double lo, double hi) {
    CaseResult c{std::move(suite), std::move(id), "range", measured, expected, std::abs(measured - expected), hi, lo};
    c.pass = measured >= lo && measured <= hi;
    return c;
  }
  static CaseResult at_least(std::string suite, std::string id, double measured, double minimum) {
    CaseResult c{std::move(suite), std::move(id), "min", measured, minimum, 0, minimum};
    c.pass = measured >= minimum;
    return c;
  }
  /// A case that could not be evaluated (numerical breakdown, bad input).
  static CaseResult failure(std::string suite, std::string id, const std::string& message) {
    CaseResult c{std::move(suite), std::move(id), "error"};
    c.measured = c.expected = c.error = std::nan("");
    c.details["error"] = message;
    return c;
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"id", id},           {"comparison", comparison}, {"measured", measured}, {"expected", expected},
                     {"error", error},     {"tolerance", tolerance},   {"pass", pass}};
    if (comparison == "range") j["tolerance_lo"] = tolerance_lo;
    if (!details.empty()) j["details"] = details;
    return j;
  }
};

namespace detail {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("write failed for " + path.string());
}

}  // namespace detail

/// Tidy CSV from rows of JSON objects; `columns` fixes order and header.
inline std::string csv_table(const std::vector<std::string>& columns, const nlohmann::json& rows) {
  std::string out;
  for (std::size_t k = 0; k < columns.size(); ++k) out += (k ? "," : "") + columns[k];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (k) out += ",";
      if (!row.contains(columns[k])) continue;
      const auto& v = row[columns[k]];
      if (v.is_string()) out += detail::csv_escape(v.get<std::string>());
      else if (v.is_boolean()) out += v.get<bool>() ? "true" : "false";
      else if (v.is_number_integer()) out += std::to_string(v.get<long long>());
      else if (v.is_number()) out += detail::format_number(v.get<double>());
      else if (v.is_null()) out += "nan";
    }
    out += "\n";
  }
  return out;
}

inline std::string cases_csv(const std::vector<CaseResult>& cases) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : cases) {
    rows.push_back({{"case", c.id},
                    {"comparison", c.comparison},
                    {"measured", c.measured},
                    {"expected", c.expected},
                    {"error", c.error},
                    {"tolerance_lo", c.comparison == "range" ? nlohmann::json(c.tolerance_lo) : nlohmann::json("")},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass}});
  }
  return csv_table({"case", "comparison", "measured", "expected", "error", "tolerance_lo", "tolerance", "pass"}, rows);
}

}  // namespace toda
