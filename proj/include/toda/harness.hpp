#pragma once

// Batch driver: builds parameter sets, runs suites, writes reports.

#include <chrono>
#include <cstdio>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "asymptotics.hpp"
#include "config.hpp"
#include "identities.hpp"
#include "mass.hpp"
#include "params_io.hpp"
#include "report.hpp"
#include "residual.hpp"
#include "solution.hpp"

namespace toda {

struct ParamSet {
  std::string id;
  std::optional<std::uint64_t> seed;  // unset for sets read from a file
  double scale = 1;
  SolutionParams params;

  int n() const { return params.n(); }
};

inline std::vector<ParamSet> build_param_sets(const RunConfig& cfg) {
  std::vector<ParamSet> out;
  if (cfg.params_file) {
    const auto loaded = load_params_file(*cfg.params_file);
    for (std::size_t k = 0; k < loaded.size(); ++k)
      out.push_back({"file" + std::to_string(k), std::nullopt, loaded[k].scale, loaded[k].params});
    return out;
  }
  for (int n : cfg.ns) {
    for (int k = 0; k < cfg.count; ++k) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(k);
      out.push_back({"n" + std::to_string(n) + "_seed" + std::to_string(seed), seed, 1.0, sample_params(n, seed, cfg.magnitude)});
    }
  }
  return out;
}

inline nlohmann::json param_set_json(const ParamSet& ps) {
  nlohmann::json j{{"id", ps.id}, {"n", ps.n()}, {"scale", ps.scale}, {"params", params_to_json(ps.params)}};
  j["seed"] = ps.seed ? nlohmann::json(*ps.seed) : nlohmann::json(nullptr);
  return j;
}

struct SuiteResult {
  std::string name;
  std::vector<CaseResult> cases;
  nlohmann::json series = nlohmann::json::object();  // plot rows by table name
  double runtime_seconds = 0;

  bool pass() const {
    for (const auto& c : cases)
      if (!c.pass) return false;
    return true;
  }
  void add(CaseResult c) {
    c.suite = name;
    cases.push_back(std::move(c));
  }
  void row(const std::string& table, nlohmann::json r) {
    if (!series.contains(table)) series[table] = nlohmann::json::array();
    series[table].push_back(std::move(r));
  }
};

namespace detail {

inline std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s);
  return buf;
}

inline nlohmann::json seed_json(const ParamSet& ps) {
  return ps.seed ? nlohmann::json(*ps.seed) : nlohmann::json("");
}

/// Runs body for one parameter set; evaluation breakdowns become failed cases
/// tagged with the set id.
template <class Body>
void guarded(SuiteResult& suite, const ParamSet& ps, Body&& body) {
  try {
    body();
  } catch (const PositivityViolation& e) {
    suite.add(CaseResult::failure(suite.name, ps.id + "/error", e.what()));
  } catch (const InvalidArgument& e) {
    suite.add(CaseResult::failure(suite.name, ps.id + "/error", e.what()));
  }
}

inline GridSpec grid_for(const RunConfig& cfg) { return GridSpec::with_spacing({0, 0}, cfg.grid_half_width, cfg.grid_h); }

inline void residual_details(CaseResult& c, const ResidualReport& r) {
  c.details = {{"h", r.h},
               {"max_residual", r.overall_max()},
               {"max_residual_fine", r.overall_max_fine()},
               {"ratio", r.ratio()},
               {"per_component", r.max_residual},
               {"per_component_fine", r.max_residual_fine}};
}

inline void run_pde(const RunConfig& cfg, const std::vector<ParamSet>& sets, SuiteResult& suite) {
  for (const auto& ps : sets) {
    guarded(suite, ps, [&] {
      const auto r = pde_residual(ps.params, grid_for(cfg));
      auto c = CaseResult::range(suite.name, ps.id + "/order", r.order_estimate(), 2.0, cfg.tol("pde_order_min"),
                                 cfg.tol("pde_order_max"));
      residual_details(c, r);
      suite.add(std::move(c));
      suite.row("residual", {{"n", ps.n()}, {"seed", seed_json(ps)}, {"h", r.h}, {"max_residual", r.overall_max()}});
      suite.row("residual", {{"n", ps.n()}, {"seed", seed_json(ps)}, {"h", r.h / 2}, {"max_residual", r.overall_max_fine()}});
    });
  }
}

inline void run_linearized(const RunConfig& cfg, const std::vector<ParamSet>& sets, SuiteResult& suite) {
  for (const auto& ps : sets) {
    guarded(suite, ps, [&] {
      for (const auto& dir : kernel_directions(ps.n())) {
        const auto r = linearized_residual(ps.params, dir, cfg.kernel_step, grid_for(cfg));
        const std::string base = ps.id + "/" + dir.name();
        auto order = CaseResult::range(suite.name, base + "/order", r.order_estimate(), 2.0, cfg.tol("linearized_order_min"),
                                       cfg.tol("linearized_order_max"));
        residual_details(order, r);
        suite.add(std::move(order));
        suite.add(CaseResult::error_le(suite.name, base + "/max_residual", r.overall_max(), 0.0, r.overall_max(),
                                       cfg.tol("linearized_max_residual")));
        for (const auto& [h, v] : {std::pair{r.h, r.overall_max()}, std::pair{r.h / 2, r.overall_max_fine()}}) {
          suite.row("linearized",
                    {{"n", ps.n()}, {"seed", seed_json(ps)}, {"direction", dir.name()}, {"h", h}, {"max_residual", v}});
        }
      }
    });
  }
}

inline void run_identities(const RunConfig& cfg, SuiteResult& suite) {
  const auto rep = verify_identity_sweep(cfg.m_max, [&](int) {
    std::vector<long> ns;
    for (long n = cfg.identity_n_min; n <= cfg.identity_n_max; ++n) ns.push_back(n);
    return ns;
  });
  for (char kind : {'F', 'G'}) {
    for (int m = kind == 'F' ? 1 : 2; m <= cfg.m_max; ++m) {
      int total = 0, matched = 0;
      std::optional<long> first_bad;
      std::string expected;
      for (const auto& c : rep.cases) {
        if (c.kind != kind || c.m != m) continue;
        ++total;
        expected = c.expected.str();
        if (c.pass) ++matched;
        else if (!first_bad) first_bad = c.n;
      }
      const auto& cov = rep.coverage[static_cast<std::size_t>(m - 1)];
      CaseResult c{suite.name, std::string(1, kind) + "_m" + std::to_string(m), "le", static_cast<double>(matched),
                   static_cast<double>(total), static_cast<double>(total - matched), 0.0};
      c.pass = total > 0 && matched == total;
      c.details = {{"closed_form", expected},
                   {"n_min", cfg.identity_n_min},
                   {"n_max", cfg.identity_n_max},
                   {"distinct_n", cov.distinct_n},
                   {"degree_bound", cov.degree_bound},
                   {"proves_n_independence", cov.proves_n_independence}};
      if (first_bad) c.details["first_mismatch_n"] = *first_bad;
      suite.add(std::move(c));
    }
  }
}

inline void run_asymptotics(const RunConfig& cfg, const std::vector<ParamSet>& sets, SuiteResult& suite) {
  const RadiusPair radii{cfg.radius / 2, cfg.radius};
  const int M = cfg.angular_samples;
  auto expansion_rows = [&](const std::string& which, int m, const ExpansionCheck& e) {
    for (const auto& [r, v] : {std::pair{e.r_lo, e.measured_lo}, std::pair{e.r_hi, e.measured_hi}}) {
      suite.row("asymptotics", {{"m", m}, {"which", which}, {"r", r}, {"measured", v}, {"predicted", e.predicted},
                                {"rel_err", std::abs(v - e.predicted) / e.reference}});
    }
  };
  for (const auto& ps : sets) {
    guarded(suite, ps, [&] {
      const int n = ps.n();
      const auto& sp = ps.params;
      for (int m = 1; m <= n; ++m) {
        const auto ff = first_frequency_check(sp, m, radii, M);
        auto c = CaseResult::error_le(suite.name, ps.id + "/first_frequency_m" + std::to_string(m), ff.cos_part.extrapolated,
                                      ff.cos_part.predicted, ff.complex_rel_error, cfg.tol("first_frequency_rel"));
        c.details = {{"sin_measured", ff.sin_part.extrapolated},
                     {"sin_predicted", ff.sin_part.predicted},
                     {"raw_rel_error_cos", ff.cos_part.rel_error_raw},
                     {"raw_rel_error_sin", ff.sin_part.rel_error_raw}};
        suite.add(std::move(c));
        expansion_rows(ps.id + ":" + ff.cos_part.label, m, ff.cos_part);
        expansion_rows(ps.id + ":" + ff.sin_part.label, m, ff.sin_part);
      }
      const auto radial = zero_coefficients(sp);
      for (int m = 1; m <= n; ++m) {
        const auto lc = leading_coefficient_check(radial, m, cfg.leading_radius, M);
        auto c = CaseResult::relative(suite.name, ps.id + "/leading_m" + std::to_string(m), lc.measured, lc.predicted,
                                      cfg.tol("leading_coefficient_rel"));
        c.details = {{"exponent", lc.exponent}, {"r", lc.r}};
        suite.add(std::move(c));
        auto alt = CaseResult::at_least(suite.name, ps.id + "/leading_alternate_exponent_m" + std::to_string(m),
                                        lc.alternate_orders, cfg.tol("leading_alternate_min_orders"));
        alt.details = {{"exponent", lc.alternate_exponent},
                       {"measured", lc.alternate_measured},
                       {"predicted", lc.predicted},
                       {"rel_error", lc.alternate_rel_error}};
        suite.add(std::move(alt));
        suite.row("asymptotics", {{"m", m}, {"which", ps.id + ":leading"}, {"r", lc.r}, {"measured", lc.measured},
                                  {"predicted", lc.predicted}, {"rel_err", lc.rel_error}});
      }
      const auto spl = sp.cast<long double>();
      for (const auto& dir : kernel_directions(n)) {
        for (int m = 1; m <= n; ++m) {
          const auto ks = kernel_signature_check(spl, dir, m, radii, static_cast<long double>(cfg.kernel_step), M);
          const auto& e = ks.signature;
          auto c = CaseResult::error_le(suite.name, ps.id + "/kernel_" + e.label, e.measured_hi, e.predicted, e.rel_error_raw,
                                        cfg.tol("kernel_signature_rel"));
          c.details = {{"frequency", ks.frequency}, {"r", e.r_hi}, {"reference", e.reference},
                       {"extrapolated", e.extrapolated}, {"extrapolated_rel_error", e.rel_error}, {"cross_term", ks.cross_term}};
          suite.add(std::move(c));
          expansion_rows(ps.id + ":kernel_" + e.label, m, e);
        }
      }
      for (int i = 1; i <= n; ++i) {
        const auto ct = constant_term_probe(radial, i, radii, M);
        const auto& e = ct.against_sum;
        auto c = CaseResult::error_le(suite.name, ps.id + "/constant_term_i" + std::to_string(i), e.extrapolated, e.predicted,
                                      e.rel_error, cfg.tol("constant_term_rel"));
        c.details = {{"table_limit", ct.tables.limit_table()},
                     {"table_rel_error", ct.rel_error_table},
                     {"tables_agree_with_sums", ct.tables_agree},
                     {"b_table", {ct.tables.b1_table, ct.tables.b2_table, ct.tables.b3_table}},
                     {"b_sum", {ct.tables.b1_sum, ct.tables.b2_sum, ct.tables.b3_sum}}};
        suite.add(std::move(c));
      }
    });
  }
}

inline void run_mass(const RunConfig& cfg, const std::vector<ParamSet>& sets, SuiteResult& suite) {
  for (const auto& ps : sets) {
    guarded(suite, ps, [&] {
      std::vector<double> flux;
      for (int i = 1; i <= ps.n(); ++i) {
        const auto r = mass_report(ps.params, i, cfg.mass_radius, cfg.mass_radius);
        flux.push_back(r.flux_value);
        const std::string base = ps.id + "/i" + std::to_string(i);
        auto f = CaseResult::relative(suite.name, base + "/flux", r.flux_value, r.predicted, cfg.tol("mass_flux_rel"));
        f.details = {{"R", r.R_flux}};
        suite.add(std::move(f));
        auto q = CaseResult::error_le(suite.name, base + "/flux_vs_quadrature", r.quadrature_value, r.flux_value, r.agreement,
                                      cfg.tol("mass_agreement_rel"));
        q.details = {{"R_max", r.R_max},
                     {"disc", r.quadrature.disc},
                     {"tail", r.quadrature.tail},
                     {"tail_outer_spread", r.quadrature.outer_spread},
                     {"tail_fit_unstable", r.quadrature.tail_fit_unstable},
                     {"quadrature_rel_error", r.quadrature_rel_error}};
        suite.add(std::move(q));
      }
      const auto rule = mass_sum_rule(flux, ps.params.cartan());
      for (std::size_t i = 0; i < rule.size(); ++i) {
        suite.add(CaseResult::relative(suite.name, ps.id + "/i" + std::to_string(i + 1) + "/sum_rule", rule[i],
                                       8 * std::numbers::pi, cfg.tol("mass_sum_rule_rel")));
      }
    });
  }
}

inline void run_t_integrals(const RunConfig& cfg, const std::vector<ParamSet>& sets, SuiteResult& suite) {
  for (const auto& ps : sets) {
    if (ps.n() < 2) continue;  // no second-frequency parameters
    guarded(suite, ps, [&] {
      const auto spl = ps.params.cast<long double>();
      for (int l = 2; l <= ps.n(); ++l) {
        for (bool sine : {false, true}) {
          for (int comp : {l - 1, l}) {
            const auto t = t_integral(spl, l, sine, comp, cfg.t_radii, static_cast<long double>(cfg.kernel_step), 64,
                                      cfg.tol("t_integral_min_ratio"));
            const double min_ratio = t.ratios.empty() ? 0.0 : *std::min_element(t.ratios.begin(), t.ratios.end());
            const std::string which = std::string(sine ? "beta2_" : "alpha2_") + std::to_string(l);
            auto c = CaseResult::at_least(suite.name, ps.id + "/T_" + which + "_U" + std::to_string(comp), min_ratio,
                                          cfg.tol("t_integral_min_ratio"));
            c.details = {{"radii", t.radii},     {"partial", t.partial}, {"differences", t.differences},
                         {"ratios", t.ratios},   {"value", t.value},     {"tail", t.tail},
                         {"tail_fit_ok", t.tail_fit_ok}};
            suite.add(std::move(c));
          }
        }
      }
    });
  }
}

}  // namespace detail

struct RunResult {
  nlohmann::json config;
  std::vector<ParamSet> sets;
  std::vector<SuiteResult> suites;

  bool pass() const {
    for (const auto& s : suites)
      if (!s.pass()) return false;
    return true;
  }
  std::size_t failure_count() const {
    std::size_t k = 0;
    for (const auto& s : suites)
      for (const auto& c : s.cases) k += c.pass ? 0 : 1;
    return k;
  }

  /// Everything except timing; byte-identical for identical configs.
  nlohmann::json summary() const {
    nlohmann::json sets_json = nlohmann::json::array();
    for (const auto& ps : sets) sets_json.push_back(param_set_json(ps));
    nlohmann::json suites_json = nlohmann::json::object();
    nlohmann::json series = nlohmann::json::object();
    std::size_t total = 0;
    for (const auto& s : suites) {
      nlohmann::json cases = nlohmann::json::array();
      std::size_t failures = 0;
      for (const auto& c : s.cases) {
        cases.push_back(c.to_json());
        failures += c.pass ? 0 : 1;
      }
      total += s.cases.size();
      suites_json[s.name] = {{"pass", s.pass()}, {"case_count", s.cases.size()}, {"failure_count", failures}, {"cases", cases}};
      for (const auto& [table, rows] : s.series.items()) {
        for (const auto& r : rows) series[table].push_back(r);
      }
    }
    return {{"config", config},   {"param_sets", sets_json}, {"suites", suites_json}, {"series", series},
            {"pass", pass()},     {"case_count", total},     {"failure_count", failure_count()}};
  }
};

/// Runs the configured suites without touching the filesystem (except to read
/// a params file). Throws ConfigError on invalid configuration.
inline RunResult run_suites(const RunConfig& cfg, std::ostream* log = nullptr) {
  cfg.validate();
  RunResult out;
  out.config = cfg.to_json();
  if (cfg.suites.empty()) return out;
  out.sets = build_param_sets(cfg);
  for (const auto& name : known_suites()) {
    if (std::find(cfg.suites.begin(), cfg.suites.end(), name) == cfg.suites.end()) continue;
    SuiteResult suite;
    suite.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    if (name == "pde") detail::run_pde(cfg, out.sets, suite);
    else if (name == "linearized") detail::run_linearized(cfg, out.sets, suite);
    else if (name == "identities") detail::run_identities(cfg, suite);
    else if (name == "asymptotics") detail::run_asymptotics(cfg, out.sets, suite);
    else if (name == "mass") detail::run_mass(cfg, out.sets, suite);
    else if (name == "t-integrals") detail::run_t_integrals(cfg, out.sets, suite);
    suite.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (log) {
      std::size_t failed = 0;
      for (const auto& c : suite.cases) failed += c.pass ? 0 : 1;
      *log << name << ": " << suite.cases.size() - failed << "/" << suite.cases.size() << " passed ("
           << detail::format_seconds(suite.runtime_seconds) << " s)\n";
      for (const auto& c : suite.cases) {
        if (!c.pass) *log << "  FAIL " << c.id << " measured=" << detail::format_number(c.measured) << "\n";
      }
    }
    out.suites.push_back(std::move(suite));
  }
  return out;
}

namespace detail {
inline std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}
}  // namespace detail

/// Writes summary.json, one CSV per suite and metadata.json (timings) into
/// cfg.out. Returns 0 when every case passes, 1 otherwise.
inline int run(const RunConfig& cfg, std::ostream* log = nullptr) {
  cfg.validate();
  const auto started = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = run_suites(cfg, log);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  detail::write_text(dir / "summary.json", result.summary().dump(2) + "\n");
  nlohmann::json timing = nlohmann::json::object();
  for (const auto& s : result.suites) {
    detail::write_text(dir / (s.name + ".csv"), cases_csv(s.cases));
    timing[s.name] = s.runtime_seconds;
  }
  const nlohmann::json meta{{"started_at", detail::utc_timestamp(started)},
                            {"finished_at", detail::utc_timestamp(std::chrono::system_clock::now())},
                            {"runtime_seconds", total},
                            {"suite_runtime_seconds", timing}};
  detail::write_text(dir / "metadata.json", meta.dump(2) + "\n");
  return result.pass() ? 0 : 1;
}

inline const std::vector<std::string>& asymptotics_plot_columns() {
  static const std::vector<std::string> c{"m", "which", "r", "measured", "predicted", "rel_err"};
  return c;
}
inline const std::vector<std::string>& residual_plot_columns() {
  static const std::vector<std::string> c{"n", "seed", "h", "max_residual"};
  return c;
}
inline const std::vector<std::string>& linearized_plot_columns() {
  static const std::vector<std::string> c{"n", "seed", "direction", "h", "max_residual"};
  return c;
}

/// Reads summary.json from report_dir and writes error-vs-radius and
/// residual-vs-h tables into dest_dir. Suites that were not run give
/// header-only files. Returns the paths written.
inline std::vector<std::filesystem::path> emit_plot_data(const std::string& report_dir, const std::string& dest_dir) {
  const std::filesystem::path summary_path = std::filesystem::path(report_dir) / "summary.json";
  std::ifstream in(summary_path);
  if (!in) throw ConfigError("missing report " + summary_path.string());
  nlohmann::json summary;
  try {
    summary = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("unreadable report " + summary_path.string() + ": " + e.what());
  }
  const auto series = summary.value("series", nlohmann::json::object());
  auto rows = [&](const char* name) { return series.contains(name) ? series[name] : nlohmann::json::array(); };
  const std::filesystem::path dest(dest_dir);
  std::error_code ec;
  std::filesystem::create_directories(dest, ec);
  if (ec) throw ConfigError("cannot create " + dest.string() + ": " + ec.message());
  const std::vector<std::pair<std::string, std::string>> files{
      {"asymptotics_vs_radius.csv", csv_table(asymptotics_plot_columns(), rows("asymptotics"))},
      {"residual_vs_h.csv", csv_table(residual_plot_columns(), rows("residual"))},
      {"linearized_vs_h.csv", csv_table(linearized_plot_columns(), rows("linearized"))},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& [name, text] : files) {
    detail::write_text(dest / name, text);
    written.push_back(dest / name);
  }
  return written;
}

}  // namespace toda
