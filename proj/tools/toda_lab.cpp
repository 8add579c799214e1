// toda_lab: command-line driver for the verification suites.
//
//   toda_lab verify [--config cfg.json] [--suite pde,mass] [--n 2] ...
//   toda_lab plot-data --out report_dir [--dest dir]
//   toda_lab show-params [--params file.json | --n 2 --seed 0 --count 3]

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <toda/harness.hpp>

namespace {

constexpr int kExitConfig = 2;

struct Overrides {
  std::string config_path;
  std::vector<std::string> suites;
  bool suites_given = false;
  std::vector<int> ns;
  std::optional<std::uint64_t> seed;
  std::optional<int> count;
  std::optional<double> magnitude;
  std::optional<double> radius;
  std::optional<double> grid_h;
  std::optional<std::string> out;
  std::optional<std::string> params;
};

void add_param_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration");
  cmd->add_option("--n", o.ns, "SU(n+1) rank for random parameter sets (repeatable)")->delimiter(',');
  cmd->add_option("--seed", o.seed, "first random seed");
  cmd->add_option("--count", o.count, "random parameter sets per n");
  cmd->add_option("--magnitude", o.magnitude, "bound on |c_ij| and log lambda spread");
  cmd->add_option("--params", o.params, "parameter file (object or array of objects)");
}

toda::RunConfig build_config(const Overrides& o) {
  toda::RunConfig cfg = o.config_path.empty() ? toda::RunConfig{} : toda::load_config_file(o.config_path);
  if (o.suites_given) {
    cfg.suites.clear();
    for (const auto& s : o.suites)
      if (!s.empty()) cfg.suites.push_back(s);
  }
  if (!o.ns.empty()) cfg.ns = o.ns;
  if (o.seed) cfg.seed = *o.seed;
  if (o.count) cfg.count = *o.count;
  if (o.magnitude) cfg.magnitude = *o.magnitude;
  if (o.radius) cfg.radius = *o.radius;
  if (o.grid_h) cfg.grid_h = *o.grid_h;
  if (o.out) cfg.out = *o.out;
  if (o.params) cfg.params_file = *o.params;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toda system verification laboratory"};
  app.require_subcommand(1);

  Overrides o;
  auto* verify = app.add_subcommand("verify", "run verification suites and write reports");
  add_param_flags(verify, o);
  verify->add_option("--suite", o.suites, "suites to run: pde, linearized, identities, asymptotics, mass, t-integrals")
      ->delimiter(',');
  verify->add_option("--radius", o.radius, "outer radius of the asymptotic radius pair");
  verify->add_option("--grid-h", o.grid_h, "finite-difference grid spacing");
  verify->add_option("--out", o.out, "report directory");

  std::string report_dir = "toda_report";
  std::string dest_dir;
  auto* plot = app.add_subcommand("plot-data", "turn a report directory into plot-ready CSV");
  plot->add_option("--out", report_dir, "report directory written by verify");
  plot->add_option("--dest", dest_dir, "where to write the CSV tables (default: <out>/plot)");

  auto* show = app.add_subcommand("show-params", "print normalized parameter sets as JSON");
  add_param_flags(show, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  o.suites_given = verify->count("--suite") > 0;

  try {
    if (verify->parsed()) {
      const auto cfg = build_config(o);
      const int rc = toda::run(cfg, &std::cout);
      std::cout << (rc == 0 ? "all cases passed" : "some cases failed") << "; reports in " << cfg.out << "\n";
      return rc;
    }
    if (plot->parsed()) {
      const std::string dest = dest_dir.empty() ? report_dir + "/plot" : dest_dir;
      for (const auto& p : toda::emit_plot_data(report_dir, dest)) std::cout << p.string() << "\n";
      return 0;
    }
    if (show->parsed()) {
      const auto cfg = build_config(o);
      nlohmann::json out = nlohmann::json::array();
      for (const auto& ps : toda::build_param_sets(cfg)) out.push_back(toda::param_set_json(ps));
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const toda::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const toda::InvalidArgument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
