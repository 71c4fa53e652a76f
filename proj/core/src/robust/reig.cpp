#include "reig/robust/reig.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>

#include "reig/estimators/mine.hpp"

namespace reig {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

EstimateRecord make_record(const ExperimentModel& model, const Design& design, std::string estimator,
                           RobustMode mode, double epsilon, const EstimatorConfig& cfg,
                           const DivergenceSamples& samples, RobustValue robust,
                           std::chrono::steady_clock::time_point started) {
  EstimateRecord r;
  r.model = model.name();
  r.design = model.design_label(design);
  r.estimator = std::move(estimator);
  r.robust_mode = to_string(mode);
  r.epsilon = epsilon;
  r.n1 = cfg.n1;
  r.n2 = cfg.n2;
  r.m = cfg.m;
  r.seed = cfg.seed;
  r.value = robust.value;
  r.lambda_star = robust.lambda_star;
  r.clip_count = samples.clip_count;
  r.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return r;
}

}  // namespace

std::string to_string(RobustMode mode) {
  switch (mode) {
    case RobustMode::kNone: return "none";
    case RobustMode::kReig: return "reig";
    case RobustMode::kReigMax: return "reig_max";
    case RobustMode::kReigJoint: return "reig_joint";
  }
  return "none";
}

RobustMode parse_robust_mode(std::string_view text) {
  if (text == "none") return RobustMode::kNone;
  if (text == "reig") return RobustMode::kReig;
  if (text == "reig_max") return RobustMode::kReigMax;
  if (text == "reig_joint") return RobustMode::kReigJoint;
  throw std::invalid_argument("unknown robust mode '" + std::string(text) + "'");
}

RobustValue apply_robust(const DivergenceSamples& samples, RobustMode mode, AmbiguityRadius epsilon) {
  switch (mode) {
    case RobustMode::kNone:
      return {samples.mean(), kInf};
    case RobustMode::kReig: {
      const DualResult r = dual_min(samples.d, epsilon, samples.weights);
      return {r.robust_value, r.lambda_star};
    }
    case RobustMode::kReigMax: {
      const DualResult r = dual_max(samples.d, epsilon, samples.weights);
      return {r.robust_value, r.lambda_star};
    }
    case RobustMode::kReigJoint: {
      if (samples.joint.empty()) throw std::invalid_argument("joint robust mode needs per-sample log ratios");
      const DualResult r = dual_min(samples.joint, epsilon, samples.joint_weights);
      return {r.robust_value, r.lambda_star};
    }
  }
  throw std::invalid_argument("unknown robust mode");
}

EstimateRecord reig_estimate(const ExperimentModel& model, const Design& design, AmbiguityRadius epsilon,
                             const ConditionalProposal& proposal, const EstimatorConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  const DivergenceSamples d = sample_divergences(model, design, proposal, cfg, InnerScheme::kNested);
  const RobustValue v = apply_robust(d, RobustMode::kReig, epsilon);
  return make_record(model, design, proposal.kind() == "prior" ? "nmc" : "vnmc", RobustMode::kReig,
                     epsilon.value(), cfg, d, v, started);
}

EstimateRecord reig_max_estimate(const ExperimentModel& model, const Design& design, AmbiguityRadius epsilon,
                                 const ConditionalProposal& proposal, const EstimatorConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  const DivergenceSamples d = sample_divergences(model, design, proposal, cfg, InnerScheme::kContrastive);
  const RobustValue v = apply_robust(d, RobustMode::kReigMax, epsilon);
  return make_record(model, design, "ace", RobustMode::kReigMax, epsilon.value(), cfg, d, v, started);
}

EstimateRecord reig_max_estimate(const ExperimentModel& model, const Design& design, AmbiguityRadius epsilon,
                                 const ScorerNetwork& net, const EstimatorConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  const EigEstimate e = mine_eig(model, design, net, cfg);
  const RobustValue v = apply_robust(e.samples, RobustMode::kReigMax, epsilon);
  return make_record(model, design, "mine", RobustMode::kReigMax, epsilon.value(), cfg, e.samples, v, started);
}

EstimateRecord reig_joint_estimate(const ExperimentModel& model, const Design& design, AmbiguityRadius epsilon,
                                   const EstimatorConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  const PriorProposal prior(model);
  const DivergenceSamples d = sample_divergences(model, design, prior, cfg, InnerScheme::kNested);
  const RobustValue v = apply_robust(d, RobustMode::kReigJoint, epsilon);
  return make_record(model, design, "nmc", RobustMode::kReigJoint, epsilon.value(), cfg, d, v, started);
}

}  // namespace reig
