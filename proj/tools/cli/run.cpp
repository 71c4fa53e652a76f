#include "run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>

#include "reig/core/errors.hpp"
#include "reig/core/numeric.hpp"
#include "reig/estimators/mine.hpp"
#include "reig/models/factory.hpp"
#include "reig/proposals/training.hpp"

namespace reig::cli {
namespace {

// Keeps training draws apart from the estimation draws of the same seed.
constexpr std::uint64_t kTrainingSeedOffset = 0x9e3779b97f4a7c15ULL;

struct CellOutput {
  std::vector<EstimateRecord> records;
  std::string error;
  nlohmann::json trained_proposal;
};

std::unique_ptr<ConditionalProposal> make_proposal(const ExperimentModel& model, const Design& design,
                                                   const RunConfig& cfg, const EstimatorConfig& ec,
                                                   const nlohmann::json& from_file, nlohmann::json* trained) {
  if (cfg.estimator == "nmc") return std::make_unique<PriorProposal>(model);
  switch (cfg.proposal.kind) {
    case ProposalSpec::Kind::kPrior:
      return std::make_unique<PriorProposal>(model);
    case ProposalSpec::Kind::kExact: {
      const auto* ab = dynamic_cast<const ABTestModel*>(&model);
      if (!ab) throw ConfigError("the exact proposal exists for the ab model only");
      return std::make_unique<ExactPosterior>(*ab, design);
    }
    case ProposalSpec::Kind::kFile: {
      const std::string label = model.design_label(design);
      if (!from_file.contains(label)) throw std::runtime_error("proposal file has no entry for design " + label);
      return std::make_unique<AffineGaussianProposal>(AffineGaussianProposal::from_json(from_file[label]));
    }
    case ProposalSpec::Kind::kTrained: {
      EstimatorConfig tc = ec;
      tc.seed = ec.seed + kTrainingSeedOffset;
      auto fit = train_affine_proposal(model, design, tc, cfg.training);
      if (trained) *trained = fit.proposal.to_json();
      return std::make_unique<AffineGaussianProposal>(std::move(fit.proposal));
    }
  }
  throw std::logic_error("unhandled proposal kind");
}

DivergenceSamples cell_samples(const ExperimentModel& model, const Design& design, const RunConfig& cfg,
                               const EstimatorConfig& ec, const nlohmann::json& from_file, nlohmann::json* trained) {
  if (cfg.estimator == "mine") {
    EstimatorConfig tc = ec;
    tc.seed = ec.seed + kTrainingSeedOffset;
    const TrainedScorer scorer = train_scorer(model, design, tc, cfg.scorer);
    return mine_eig(model, design, scorer.net, ec).samples;
  }
  const auto proposal = make_proposal(model, design, cfg, ec, from_file, trained);
  const InnerScheme scheme = cfg.estimator == "ace" ? InnerScheme::kContrastive : InnerScheme::kNested;
  return sample_divergences(model, design, *proposal, ec, scheme);
}

CellOutput run_cell(const ExperimentModel& model, const Design& design, std::uint64_t seed, const RunConfig& cfg,
                    const nlohmann::json& from_file) {
  CellOutput out;
  const auto started = std::chrono::steady_clock::now();
  EstimatorConfig ec;
  ec.n1 = cfg.n1;
  ec.n2 = cfg.n2;
  ec.m = cfg.m;
  ec.seed = seed;
  ec.workers = 1;
  ec.enumerate = cfg.enumerate;

  const DivergenceSamples samples = cell_samples(model, design, cfg, ec, from_file, &out.trained_proposal);
  const auto sampled = std::chrono::steady_clock::now();

  const std::vector<double> sweep =
      cfg.robust_mode == RobustMode::kNone ? std::vector<double>{0.0} : cfg.epsilons;
  for (double eps : sweep) {
    const auto t0 = std::chrono::steady_clock::now();
    const RobustValue rv = apply_robust(samples, cfg.robust_mode, AmbiguityRadius(eps));
    if (!std::isfinite(rv.value)) throw EstimatorFailure("non-finite estimate at epsilon " + std::to_string(eps));
    const auto t1 = std::chrono::steady_clock::now();
    EstimateRecord r;
    r.model = model.name();
    r.design = model.design_label(design);
    r.estimator = cfg.estimator;
    r.robust_mode = to_string(cfg.robust_mode);
    r.epsilon = eps;
    r.n1 = cfg.n1;
    r.n2 = cfg.n2;
    r.m = cfg.estimator == "mine" ? 0 : cfg.m;  // no inner samples
    r.seed = seed;
    r.value = rv.value;
    r.lambda_star = rv.lambda_star;
    r.clip_count = samples.clip_count;
    if (cfg.record_runtime) {
      r.runtime_ms = std::chrono::duration<double, std::milli>((sampled - started) + (t1 - t0)).count();
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<Design> selected_designs(const ExperimentModel& model, const RunConfig& cfg) {
  if (cfg.designs.empty()) return model.design_grid();
  std::vector<Design> out;
  for (double v : cfg.designs) out.push_back(Design{v});
  return out;
}

RunResult run_experiment(const RunConfig& cfg, const nlohmann::json* proposals) {
  validate(cfg);
  const auto model = make_model(cfg.model);
  const auto designs = selected_designs(*model, cfg);

  nlohmann::json from_file;
  if (proposals) {
    from_file = *proposals;
  } else if (cfg.proposal.kind == ProposalSpec::Kind::kFile && cfg.estimator != "nmc") {
    std::ifstream in(cfg.proposal.path);
    if (!in) throw ConfigError("cannot open proposal file '" + cfg.proposal.path + "'");
    try {
      in >> from_file;
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("proposal file is not valid JSON: " + std::string(e.what()));
    }
  }

  const std::size_t n_seeds = cfg.seeds.size();
  std::vector<CellOutput> cells(designs.size() * n_seeds);
  parallel_for(cells.size(), cfg.workers, [&](std::size_t c) {
    const Design& design = designs[c / n_seeds];
    const std::uint64_t seed = cfg.seeds[c % n_seeds];
    try {
      cells[c] = run_cell(*model, design, seed, cfg, from_file);
    } catch (const std::exception& e) {
      cells[c].error = "design " + model->design_label(design) + ", seed " + std::to_string(seed) + ": " + e.what();
    }
  });

  RunResult result;
  result.cells = cells.size();
  nlohmann::json trained = nlohmann::json::object();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto& cell = cells[c];
    if (!cell.error.empty()) {
      result.failures.push_back(std::move(cell.error));
      continue;
    }
    // first seed's proposal is the one persisted per design
    if (!cell.trained_proposal.is_null() && c % n_seeds == 0) {
      trained[model->design_label(designs[c / n_seeds])] = cell.trained_proposal;
    }
    for (auto& r : cell.records) result.records.push_back(std::move(r));
  }
  if (!cfg.save_proposals.empty()) {
    std::ofstream out(cfg.save_proposals);
    if (!out) throw ConfigError("cannot write proposal file '" + cfg.save_proposals + "'");
    out << trained.dump(2) << '\n';
  }
  return result;
}

}  // namespace reig::cli
