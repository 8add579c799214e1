#pragma once

// JSON parameter files:
//   {"n": 2, "lambdas": [...], "coeffs": [{"i": 1, "j": 0, "re": 0.1, "im": 0}]}
// A file holds one such object or an array of them. Lambdas are normalized to
// the product constraint on load; the applied scale is reported.

#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "solution.hpp"

namespace toda {

struct LoadedParams {
  SolutionParams params;
  double scale = 1;  // raw lambdas were multiplied by this factor
};

inline nlohmann::json params_to_json(const SolutionParams& sp) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int i = 1; i <= sp.n(); ++i) {
    for (int j = 0; j < i; ++j) {
      const auto c = sp.c(i, j);
      coeffs.push_back({{"i", i}, {"j", j}, {"re", c.real()}, {"im", c.imag()}});
    }
  }
  return {{"n", sp.n()}, {"lambdas", sp.lambdas()}, {"coeffs", coeffs}};
}

inline LoadedParams params_from_json(const nlohmann::json& j, const std::string& where = "params") {
  auto fail = [&](const std::string& msg) { throw ConfigError(where + ": " + msg); };
  if (!j.is_object()) fail("expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "n" && key != "lambdas" && key != "coeffs") fail("unknown key '" + key + "'");
  }
  if (!j.contains("n") || !j["n"].is_number_integer()) fail("'n' must be an integer");
  const int n = j["n"].get<int>();
  if (n < 1) fail("'n' must be >= 1");
  if (!j.contains("lambdas") || !j["lambdas"].is_array()) fail("'lambdas' must be an array");
  std::vector<double> raw;
  for (const auto& v : j["lambdas"]) {
    if (!v.is_number()) fail("'lambdas' entries must be numbers");
    raw.push_back(v.get<double>());
  }
  if (raw.size() != static_cast<std::size_t>(n) + 1) fail("need n+1 lambdas");
  for (double v : raw) {
    if (!(v > 0) || !std::isfinite(v)) fail("lambdas must be finite and positive");
  }
  std::map<std::pair<int, int>, std::complex<double>> coeffs;
  if (j.contains("coeffs")) {
    if (!j["coeffs"].is_array()) fail("'coeffs' must be an array");
    for (const auto& c : j["coeffs"]) {
      if (!c.is_object() || !c.contains("i") || !c.contains("j")) fail("coeff entries need 'i' and 'j'");
      const int i = c["i"].get<int>();
      const int jj = c["j"].get<int>();
      if (i < 1 || i > n || jj < 0 || jj >= i) fail("coefficient (" + std::to_string(i) + "," + std::to_string(jj) + ") out of range");
      const double re = c.value("re", 0.0);
      const double im = c.value("im", 0.0);
      if (!std::isfinite(re) || !std::isfinite(im)) fail("coefficients must be finite");
      if (!coeffs.emplace(std::make_pair(i, jj), std::complex<double>(re, im)).second)
        fail("duplicate coefficient (" + std::to_string(i) + "," + std::to_string(jj) + ")");
    }
  }
  double scale = 1;
  try {
    auto sp = SolutionParams::from_raw(n, raw, coeffs, &scale);
    return {std::move(sp), scale};
  } catch (const InvalidArgument& e) {
    fail(e.what());
  }
  throw ConfigError(where);  // unreachable
}

/// One object or an array of objects.
inline std::vector<LoadedParams> load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open params file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("params file " + path + ": " + e.what());
  }
  std::vector<LoadedParams> out;
  try {
    if (j.is_array()) {
      for (std::size_t k = 0; k < j.size(); ++k) out.push_back(params_from_json(j[k], path + "[" + std::to_string(k) + "]"));
    } else {
      out.push_back(params_from_json(j, path));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("params file " + path + ": " + e.what());
  }
  if (out.empty()) throw ConfigError("params file " + path + " holds no parameter sets");
  return out;
}

}  // namespace toda
