#include "app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <ostream>
#include <sstream>

#include "config.hpp"
#include "csv.hpp"
#include "figures.hpp"
#include "oracle_report.hpp"
#include "run.hpp"

namespace reig::cli {
namespace {

void add_budget_flags(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--epsilon", o.epsilon, "Ambiguity radius or comma-separated list");
  cmd.add_option("--n1", o.n1, "Outer parameter draws")->check(CLI::PositiveNumber);
  cmd.add_option("--n2", o.n2, "Outcomes per parameter draw")->check(CLI::PositiveNumber);
  cmd.add_option("--m", o.m, "Inner samples")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", o.seed, "Seed or comma-separated seeds (default: $REIG_LAB_SEED or 0)");
  cmd.add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd.add_option("--out", o.out, "Output CSV path (default: stdout)");
  cmd.add_flag("--no-runtime", o.no_runtime, "Write runtime_ms as 0 for byte-reproducible output");
}

int do_run(const std::string& config_path, const Overrides& o, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = default_seed_from_env();
  RunConfig cfg = config_path.empty() ? parse_run_config(nlohmann::json::object(), seed)
                                      : load_run_config(config_path, seed);
  apply_overrides(cfg, o);
  const RunResult result = run_experiment(cfg);
  for (const auto& f : result.failures) err << "reig-lab: estimation failed, " << f << '\n';
  write_records(cfg.out, result.records, out);
  if (result.cells > 0 && result.failures.size() == result.cells) {
    err << "reig-lab: all " << result.cells << " estimations failed\n";
    return kExitAllFailed;
  }
  return kExitOk;
}

int do_figure(const std::string& name, const std::string& config_path, const Overrides& o, std::ostream& out) {
  const auto& names = figure_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw ConfigError("unknown figure '" + name + "'");
  FigureOptions options;
  options.overrides = o;
  options.seed = default_seed_from_env();
  if (!config_path.empty()) {
    const RunConfig cfg = load_run_config(config_path, options.seed);
    options.designs = cfg.designs;
    options.seed = cfg.seeds.front();
  }
  const std::string path = o.out.value_or("");
  if (name == "fig1") {
    write_table(path, figure_fig1(), out);
  } else if (name == "worstcase") {
    write_table(path, figure_worstcase(options), out);
  } else {
    const std::string model = name == "abtest" ? "ab" : name;
    write_records(path, figure_convergence(model, options), out);
  }
  return kExitOk;
}

int do_oracle_report(const std::optional<std::string>& models, double dual_tolerance, const std::string& path,
                     std::ostream& out, std::ostream& err) {
  OracleReportOptions options;
  options.dual_tolerance = dual_tolerance;
  if (models) {
    options.models.clear();
    std::stringstream in(*models);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (!item.empty()) options.models.push_back(item);
    }
  }
  const OracleReport report = oracle_report(options);
  write_table(path, report.table, out);
  if (report.failed > 0) {
    err << "reig-lab: " << report.failed << " oracle check(s) failed\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust expected information gain estimation", "reig-lab"};
  app.require_subcommand(1);

  std::string run_config;
  Overrides run_overrides;
  auto* run = app.add_subcommand("run", "Estimate (R)EIG over designs, seeds and radii; writes CSV");
  run->add_option("-c,--config", run_config, "JSON run configuration")->check(CLI::ExistingFile);
  add_budget_flags(*run, run_overrides);
  run->add_option("--model", run_overrides.model, "Model name (overrides the config)");
  run->add_option("--estimator", run_overrides.estimator, "nmc | vnmc | ace | mine");
  run->add_option("--robust-mode", run_overrides.robust_mode, "none | reig | reig_max | reig_joint");

  std::string figure_name;
  std::string figure_config;
  Overrides figure_overrides;
  auto* figure = app.add_subcommand("figure", "Emit the data behind one figure as CSV");
  figure->add_option("name", figure_name, "fig1 | worstcase | abtest | preference | pk")->required();
  figure->add_option("-c,--config", figure_config, "JSON file selecting designs and seed")->check(CLI::ExistingFile);
  add_budget_flags(*figure, figure_overrides);

  std::optional<std::string> report_models;
  double dual_tolerance = 1e-5;
  std::string report_out;
  auto* report = app.add_subcommand("oracle-report", "Run every closed-form cross-check");
  report->add_option("--models", report_models, "Comma-separated subset of models to check");
  report->add_option("--dual-tolerance", dual_tolerance, "Allowed gap between dual and grid search")
      ->check(CLI::NonNegativeNumber);
  report->add_option("--out", report_out, "Output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return do_run(run_config, run_overrides, out, err);
    if (*figure) return do_figure(figure_name, figure_config, figure_overrides, out);
    return do_oracle_report(report_models, dual_tolerance, report_out, out, err);
  } catch (const ConfigError& e) {
    err << "reig-lab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "reig-lab: " << e.what() << '\n';
    return kExitAllFailed;
  }
}

}  // namespace reig::cli
