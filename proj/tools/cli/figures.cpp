#include "figures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "reig/core/errors.hpp"
#include "reig/core/numeric.hpp"
#include "reig/models/factory.hpp"
#include "reig/oracle/discrete.hpp"
#include "reig/oracle/gaussian.hpp"
#include "reig/proposals/training.hpp"

namespace reig::cli {
namespace {

std::size_t or_default(const std::optional<std::size_t>& v, std::size_t fallback) { return v.value_or(fallback); }

RunConfig base_config(const std::string& model, const FigureOptions& options) {
  RunConfig cfg;
  cfg.model = {{"name", model}};
  cfg.seeds = {options.seed};
  cfg.designs = options.designs;
  cfg.workers = options.overrides.workers.value_or(1);
  if (options.overrides.seed) cfg.seeds = parse_seed_list(*options.overrides.seed);
  if (options.overrides.no_runtime) cfg.record_runtime = false;
  return cfg;
}

void append(std::vector<EstimateRecord>& all, RunResult result) {
  for (const auto& f : result.failures) throw EstimatorFailure(f);
  all.insert(all.end(), result.records.begin(), result.records.end());
}

// Trains one proposal per (design, first seed) so the M sweep reuses it.
nlohmann::json train_all(const RunConfig& cfg) {
  const auto model = make_model(cfg.model);
  const auto designs = selected_designs(*model, cfg);
  std::vector<nlohmann::json> fitted(designs.size());
  parallel_for(designs.size(), cfg.workers, [&](std::size_t i) {
    EstimatorConfig ec;
    ec.n1 = cfg.n1;
    ec.n2 = cfg.n2;
    ec.m = cfg.m;
    ec.seed = cfg.seeds.front() + 0x9e3779b97f4a7c15ULL;
    fitted[i] = train_affine_proposal(*model, designs[i], ec, cfg.training).proposal.to_json();
  });
  nlohmann::json table = nlohmann::json::object();
  for (std::size_t i = 0; i < designs.size(); ++i) table[model->design_label(designs[i])] = fitted[i];
  return table;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig1", "worstcase", "abtest", "preference", "pk"};
  return names;
}

Table figure_fig1(std::size_t points) {
  const DiagnosticTestModel model;
  Table t{{"r", "eig_A", "eig_B"}, {}};
  for (std::size_t k = 1; k <= points; ++k) {
    const double r = static_cast<double>(k) / static_cast<double>(points + 1);
    t.add({format_real(r), format_real(discrete_eig_exact(model, DiagnosticTest::kA, r)),
           format_real(discrete_eig_exact(model, DiagnosticTest::kB, r))});
  }
  return t;
}

Table figure_worstcase(const FigureOptions& options) {
  const PreferenceModel p;
  const PreferenceModel q = PreferenceModel::perturbed();
  const Vector variance = p.prior_scale().array().square();
  const double epsilon = gaussian_kl(q.prior_location(), p.prior_location(), variance);

  EstimatorConfig ec;
  ec.n1 = or_default(options.overrides.n1, 1000);
  ec.n2 = or_default(options.overrides.n2, 5);
  ec.m = or_default(options.overrides.m, 500);
  ec.seed = options.overrides.seed ? parse_seed_list(*options.overrides.seed).front() : options.seed;
  std::vector<Design> designs;
  if (options.designs.empty()) designs = p.design_grid();
  else for (double v : options.designs) designs.push_back(Design{v});

  struct Row {
    EigEstimate ep, eq;
    DualResult robust;
  };
  std::vector<Row> rows(designs.size());
  parallel_for(designs.size(), options.overrides.workers.value_or(1), [&](std::size_t i) {
    rows[i].ep = nmc_eig(p, designs[i], ec);
    rows[i].eq = nmc_eig(q, designs[i], ec);
    rows[i].robust = dual_min(rows[i].ep.samples.d, AmbiguityRadius(epsilon));
  });

  Table t{{"design", "eig_p", "se_p", "eig_q", "se_q", "reig_p", "epsilon", "lambda_star"}, {}};
  for (std::size_t i = 0; i < designs.size(); ++i) {
    const auto& r = rows[i];
    t.add({p.design_label(designs[i]), format_real(r.ep.value), format_real(r.ep.standard_error),
           format_real(r.eq.value), format_real(r.eq.standard_error), format_real(r.robust.robust_value),
           format_real(epsilon), format_real(r.robust.lambda_star)});
  }
  return t;
}

std::vector<EstimateRecord> figure_convergence(const std::string& model, const FigureOptions& options) {
  const auto& o = options.overrides;
  RunConfig base = base_config(model, options);
  base.n1 = or_default(o.n1, 100);
  base.n2 = or_default(o.n2, 10);
  base.m = or_default(o.m, 100);
  const nlohmann::json proposals = train_all(base);

  std::vector<EstimateRecord> all;
  // estimator convergence in M
  for (std::size_t m : {std::size_t{30}, std::size_t{100}, std::size_t{1000}}) {
    for (const char* estimator : {"nmc", "vnmc", "ace"}) {
      RunConfig cfg = base;
      cfg.estimator = estimator;
      cfg.m = m;
      cfg.proposal.kind = ProposalSpec::Kind::kFile;
      append(all, run_experiment(cfg, &proposals));
    }
  }
  // MINE over total sample sizes; the epoch count keeps the number of
  // gradient steps roughly level across sizes
  for (std::size_t total : {std::size_t{10000}, std::size_t{30000}, std::size_t{50000}}) {
    RunConfig cfg = base;
    cfg.estimator = "mine";
    cfg.n1 = total / cfg.n2;
    cfg.scorer.epochs = std::max(20, static_cast<int>(500 * 1000 / total));
    append(all, run_experiment(cfg));
  }
  // epsilon sweep: worst case for the upper-bound estimators, best case for
  // the lower-bound ones
  const std::vector<double> sweep{0.0, 0.001, 0.01, 0.1};
  for (const auto& [estimator, mode] : std::vector<std::pair<const char*, RobustMode>>{
           {"nmc", RobustMode::kReig}, {"vnmc", RobustMode::kReig}, {"ace", RobustMode::kReigMax}}) {
    RunConfig cfg = base;
    cfg.estimator = estimator;
    cfg.robust_mode = mode;
    cfg.epsilons = sweep;
    cfg.proposal.kind = ProposalSpec::Kind::kFile;
    append(all, run_experiment(cfg, &proposals));
  }
  {
    RunConfig cfg = base;
    cfg.estimator = "mine";
    cfg.robust_mode = RobustMode::kReigMax;
    cfg.epsilons = sweep;
    append(all, run_experiment(cfg));
  }
  return all;
}

}  // namespace reig::cli
