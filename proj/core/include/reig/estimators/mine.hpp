#pragma once

#include <vector>

#include "reig/estimators/config.hpp"
#include "reig/estimators/nested.hpp"
#include "reig/estimators/scorer.hpp"

namespace reig {

struct ScorerTrainingOptions {
  int epochs = 500;
  std::size_t batch_size = 256;
  double step_size = 1e-3;
  double momentum = 0.9;
};

struct TrainedScorer {
  ScorerNetwork net;
  /// Held-out objective after each epoch; entry 0 is the initial network.
  std::vector<double> held_out_objective;
  int best_epoch = 0;
};

/// Scorer inputs: column k is (theta_k, f(y_k)) with f the model's outcome
/// feature map.
Matrix scorer_inputs(const ExperimentModel& model, const Matrix& theta, const Matrix& y);

/// Outcomes paired with the next parameter block: column i * n2 + k receives
/// y_{(i+1) mod n1, k}. No column keeps an outcome generated by its own theta.
Matrix shuffle_outcomes(const JointSamples& joint);

/// mean_j T(joint_j) - mean_k exp(T(marginal_k) - 1).
double mine_objective(const ScorerNetwork& net, const Matrix& joint_inputs, const Matrix& marginal_inputs);
/// Gradient of mine_objective in the network parameters.
Vector mine_objective_gradient(const ScorerNetwork& net, const Matrix& joint_inputs, const Matrix& marginal_inputs);

/// MINE estimate over cfg.n1 * cfg.n2 joint draws (same stream layout as the
/// nested estimators). d_i averages T(theta_i, y_ik) - exp(T(theta_i, y*_ik) - 1)
/// over k, with y* from shuffle_outcomes. Requires cfg.n1 >= 2.
EigEstimate mine_eig(const ExperimentModel& model, const Design& design, const ScorerNetwork& net,
                     const EstimatorConfig& cfg);

/// Momentum gradient ascent on the MINE objective. Training and held-out sets
/// each hold cfg.n1 * cfg.n2 joint draws; the checkpoint with the best held-out
/// objective is returned. Throws TrainingFailure on a NaN objective.
TrainedScorer train_scorer(const ExperimentModel& model, const Design& design, const EstimatorConfig& cfg,
                           const ScorerTrainingOptions& options = {});

}  // namespace reig
