#pragma once

#include <string>
#include <string_view>

#include "reig/core/record.hpp"
#include "reig/estimators/nested.hpp"
#include "reig/estimators/scorer.hpp"
#include "reig/robust/dual.hpp"

namespace reig {

enum class RobustMode {
  kNone,       ///< plain mean of the divergence samples
  kReig,       ///< worst case over priors near the reference (dual_min on d)
  kReigMax,    ///< best case, to counter the bias of lower-bound estimators
  kReigJoint,  ///< worst case over the joint distribution of (theta, y)
};

std::string to_string(RobustMode mode);
/// Accepts "none", "reig", "reig_max", "reig_joint"; throws std::invalid_argument otherwise.
RobustMode parse_robust_mode(std::string_view text);

struct RobustValue {
  double value = 0.0;
  /// Infinite for kNone and whenever epsilon = 0.
  double lambda_star = 0.0;
};

/// Applies a robust mode to already-computed divergence samples. This is a pure
/// post-process, so one set of samples serves a whole epsilon sweep.
RobustValue apply_robust(const DivergenceSamples& samples, RobustMode mode, AmbiguityRadius epsilon);

/// Sampling REIG: draw cfg.n1 parameters, estimate each divergence with the
/// nested scheme (prior proposal: NMC, otherwise VNMC), and return the
/// worst-case mean over the KL ball.
EstimateRecord reig_estimate(const ExperimentModel& model, const Design& design, AmbiguityRadius epsilon,
                             const ConditionalProposal& proposal, const EstimatorConfig& cfg);

/// Best-case mean over the KL ball of contrastive (ACE) divergences.
EstimateRecord reig_max_estimate(const ExperimentModel& model, const Design& design, AmbiguityRadius epsilon,
                                 const ConditionalProposal& proposal, const EstimatorConfig& cfg);
/// Best-case mean over the KL ball of MINE divergences.
EstimateRecord reig_max_estimate(const ExperimentModel& model, const Design& design, AmbiguityRadius epsilon,
                                 const ScorerNetwork& net, const EstimatorConfig& cfg);

/// Worst case over the joint distribution: the dual acts on the cfg.n1 * cfg.n2
/// per-sample NMC log ratios instead of their per-parameter averages.
EstimateRecord reig_joint_estimate(const ExperimentModel& model, const Design& design, AmbiguityRadius epsilon,
                                   const EstimatorConfig& cfg);

}  // namespace reig
