#pragma once

// Run configuration: which suites to run, on which parameter sets, with which
// tolerances. Loaded from JSON and then overridden by command-line flags.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace toda {

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names{"pde", "linearized", "identities", "asymptotics", "mass", "t-integrals"};
  return names;
}

/// Defaults follow the acceptance thresholds.
inline const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tol{
      {"pde_order_min", 1.5},
      {"pde_order_max", 2.5},
      {"linearized_order_min", 1.5},
      {"linearized_order_max", 2.5},
      {"linearized_max_residual", 1e-3},
      {"first_frequency_rel", 0.02},
      {"kernel_signature_rel", 0.03},
      {"leading_coefficient_rel", 0.01},
      {"leading_alternate_min_orders", 2.0},
      {"constant_term_rel", 1e-6},
      {"mass_flux_rel", 0.01},
      {"mass_agreement_rel", 0.005},
      {"mass_sum_rule_rel", 0.01},
      {"t_integral_min_ratio", 1.5},
  };
  return tol;
}

struct RunConfig {
  std::vector<std::string> suites = known_suites();

  // Parameter source: a file when params_file is set, otherwise seeded random
  // sets for every n in `ns` and seeds seed..seed+count-1.
  std::optional<std::string> params_file;
  std::vector<int> ns{1, 2, 3};
  std::uint64_t seed = 0;
  int count = 1;
  double magnitude = 0.5;

  double grid_h = 1e-2;
  double grid_half_width = 1.0;
  double radius = 400;  // outer radius of the (radius/2, radius) asymptotic pair
  double leading_radius = 1e3;
  double mass_radius = 1e3;
  double kernel_step = 1e-4;
  int angular_samples = 128;
  std::vector<double> t_radii{50, 100, 200, 400};
  int m_max = 10;
  long identity_n_min = -20;
  long identity_n_max = 40;

  std::map<std::string, double> tolerances = default_tolerances();
  std::string out = "toda_report";

  double tol(const std::string& key) const { return tolerances.at(key); }

  void validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    for (const auto& s : suites) {
      if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
        fail("unknown suite '" + s + "'");
    }
    if (!params_file) {
      if (ns.empty()) fail("no n values given");
      for (int n : ns) {
        if (n < 1 || n > 8) fail("n must be in 1..8, got " + std::to_string(n));
      }
      if (count < 1) fail("count must be >= 1");
      if (!(magnitude >= 0)) fail("magnitude must be >= 0");
    }
    if (!(grid_h > 0) || !(grid_half_width > 0) || grid_h > grid_half_width) fail("need 0 < grid_h <= grid_half_width");
    if (!(radius >= 4) || radius > 1e3) fail("radius must be in [4, 1000]");
    if (!(leading_radius >= 2) || leading_radius > 1e3) fail("leading_radius must be in [2, 1000]");
    if (!(mass_radius >= 1e2) || mass_radius > 1e3) fail("mass_radius must be in [100, 1000]");
    if (!(kernel_step > 0)) fail("kernel_step must be > 0");
    if (angular_samples < 16) fail("angular_samples must be >= 16");
    if (t_radii.size() < 3) fail("t_radii needs at least three radii");
    if (!std::is_sorted(t_radii.begin(), t_radii.end()) || !(t_radii.front() > 1)) fail("t_radii must be increasing and > 1");
    if (m_max < 1 || m_max > 12) fail("m_max must be in 1..12");
    if (identity_n_min > identity_n_max) fail("identity_n_min > identity_n_max");
    for (const auto& [key, value] : tolerances) {
      if (!default_tolerances().contains(key)) fail("unknown tolerance '" + key + "'");
      if (!(value >= 0)) fail("tolerance '" + key + "' must be >= 0");
    }
    if (out.empty()) fail("output directory must not be empty");
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"suites", suites},
                     {"grid_h", grid_h},
                     {"grid_half_width", grid_half_width},
                     {"radius", radius},
                     {"leading_radius", leading_radius},
                     {"mass_radius", mass_radius},
                     {"kernel_step", kernel_step},
                     {"angular_samples", angular_samples},
                     {"t_radii", t_radii},
                     {"m_max", m_max},
                     {"identity_n_min", identity_n_min},
                     {"identity_n_max", identity_n_max},
                     {"tolerances", tolerances}};
    if (params_file) {
      j["params_file"] = *params_file;
    } else {
      j["n"] = ns;
      j["seed"] = seed;
      j["count"] = count;
      j["magnitude"] = magnitude;
    }
    return j;
  }
};

/// Applies the keys of `j` on top of `cfg`. Unknown keys are rejected.
inline void apply_config_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "suites") cfg.suites = v.get<std::vector<std::string>>();
      else if (key == "params_file") cfg.params_file = v.get<std::string>();
      else if (key == "n") cfg.ns = v.is_array() ? v.get<std::vector<int>>() : std::vector<int>{v.get<int>()};
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "count") cfg.count = v.get<int>();
      else if (key == "magnitude") cfg.magnitude = v.get<double>();
      else if (key == "grid_h") cfg.grid_h = v.get<double>();
      else if (key == "grid_half_width") cfg.grid_half_width = v.get<double>();
      else if (key == "radius") cfg.radius = v.get<double>();
      else if (key == "leading_radius") cfg.leading_radius = v.get<double>();
      else if (key == "mass_radius") cfg.mass_radius = v.get<double>();
      else if (key == "kernel_step") cfg.kernel_step = v.get<double>();
      else if (key == "angular_samples") cfg.angular_samples = v.get<int>();
      else if (key == "t_radii") cfg.t_radii = v.get<std::vector<double>>();
      else if (key == "m_max") cfg.m_max = v.get<int>();
      else if (key == "identity_n_min") cfg.identity_n_min = v.get<long>();
      else if (key == "identity_n_max") cfg.identity_n_max = v.get<long>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "tolerances") {
        for (const auto& [name, value] : v.items()) {
          if (!default_tolerances().contains(name)) throw ConfigError("unknown tolerance '" + name + "'");
          cfg.tolerances[name] = value.get<double>();
        }
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  RunConfig cfg;
  apply_config_json(cfg, j);
  return cfg;
}

}  // namespace toda
