#pragma once

#include <vector>

#include "reig/estimators/config.hpp"
#include "reig/proposals/proposal.hpp"

namespace reig {

struct ProposalTrainingOptions {
  int epochs = 200;
  std::size_t batch_size = 64;
  /// Initial Adam step; decays to zero on a cosine schedule.
  double step_size = 3e-2;
  /// Inner draws per (theta, y) pair in the training objective.
  std::size_t inner_samples = 8;
  /// Checkpoints whose held-out bound is within this many nats of the best
  /// count as tied; the latest tied epoch is returned.
  double selection_tolerance = 1e-3;
};

struct TrainedProposal {
  AffineGaussianProposal proposal;
  /// Held-out VNMC bound after each epoch; entry 0 is the initial proposal.
  std::vector<double> held_out_bound;
  /// Epoch of the returned proposal; its bound never exceeds entry 0.
  int best_epoch = 0;
};

/// Fits an affine Gaussian proposal at one design by minimizing the VNMC
/// upper bound with reparameterized draws. Training pairs come from
/// cfg.n1 * cfg.n2 joint draws; a held-out set of the same size, scored with
/// cfg.m inner draws on frozen noise, selects the returned checkpoint. The
/// gradient is the path derivative of the importance-weighted objective.
/// Throws TrainingFailure if the objective becomes NaN.
TrainedProposal train_affine_proposal(const ExperimentModel& model, const Design& design, const EstimatorConfig& cfg,
                                      const ProposalTrainingOptions& options = {});

/// Held-out VNMC bound of a proposal: mean over the pairs of
/// log p(y|theta) - log (1/m) sum_j p(theta_j) p(y|theta_j) / q(theta_j|y).
double vnmc_bound(const ExperimentModel& model, const Design& design, const ConditionalProposal& proposal,
                  const ParamSamples& thetas, const Matrix& outcomes, std::size_t m, RandomStream rng);

}  // namespace reig
