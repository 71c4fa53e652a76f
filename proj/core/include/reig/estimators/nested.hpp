#pragma once

#include <cstddef>
#include <vector>

#include "reig/estimators/config.hpp"
#include "reig/models/model.hpp"
#include "reig/proposals/proposal.hpp"

namespace reig {

/// How the inner estimate of log p(y | design) is formed.
enum class InnerScheme {
  /// (1/M) sum_j p(theta_j) p(y|theta_j) / q(theta_j|y), theta_j ~ q. With the
  /// prior as q this is plain nested Monte Carlo.
  kNested,
  /// As kNested with the generating parameter added as an (M+1)-th term.
  kContrastive,
};

/// Inner log-marginal estimates are clipped to [-kLogMarginalClip, kLogMarginalClip].
inline constexpr double kLogMarginalClip = 1e8;

/// Per-parameter divergence estimates d_i ~ KL(p(y|theta_i) || p(y)), plus the
/// per-joint-sample log ratios they average. Empty weight vectors mean equal
/// weights; exact enumeration fills them with probabilities.
struct DivergenceSamples {
  std::vector<double> d;
  std::vector<double> weights;
  /// Row-major n1 x n2 log p(y_ik|theta_i) - log p_hat(y_ik).
  std::vector<double> joint;
  std::vector<double> joint_weights;
  std::size_t clip_count = 0;

  double mean() const;
  /// Standard error of mean() over the outer draws (0 for exact enumeration).
  double standard_error() const;
};

struct EigEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  DivergenceSamples samples;
};

/// Inner-loop bookkeeping shared by the outer estimators.
struct InnerDiagnostics {
  std::size_t clip_count = 0;
};

/// Estimate of KL(p(y|theta, design) || p(y|design)) for one theta: mean over
/// cfg.n2 outcomes of log p(y|theta) - log p_hat(y), p_hat built from cfg.m
/// proposal draws. When `joint` is non-null the n2 per-outcome terms are
/// written to it. Throws EstimatorFailure if an inner estimate is NaN.
double kl_per_theta(const ExperimentModel& model, const Vector& theta, const Design& design,
                    const ConditionalProposal& proposal, const EstimatorConfig& cfg, InnerScheme scheme,
                    RandomStream& rng, InnerDiagnostics* diagnostics = nullptr, std::vector<double>* joint = nullptr);

/// Exact per-theta divergence for a model with finite supports:
/// sum_y p(y|theta) log(p(y|theta) / p(y)).
double kl_per_theta_exact(const ExperimentModel& model, const Vector& theta, const Design& design);

/// Steps 1-2 of the sampling REIG algorithm: draw cfg.n1 parameters from the
/// prior and estimate each divergence. Stream layout: parameter draws use
/// substream 0 of the seed, outer index i uses substream(1).substream(i).
/// With cfg.enumerate on a finite model the parameter support is enumerated
/// instead and the result is exact.
DivergenceSamples sample_divergences(const ExperimentModel& model, const Design& design,
                                     const ConditionalProposal& proposal, const EstimatorConfig& cfg,
                                     InnerScheme scheme);

/// Enumerated divergences with prior-probability weights.
/// Throws std::invalid_argument if the model has no finite enumeration.
DivergenceSamples exact_divergences(const ExperimentModel& model, const Design& design);

EigEstimate nmc_eig(const ExperimentModel& model, const Design& design, const EstimatorConfig& cfg);
EigEstimate vnmc_eig(const ExperimentModel& model, const Design& design, const ConditionalProposal& proposal,
                     const EstimatorConfig& cfg);
EigEstimate ace_eig(const ExperimentModel& model, const Design& design, const ConditionalProposal& proposal,
                    const EstimatorConfig& cfg);

}  // namespace reig
