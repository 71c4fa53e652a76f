#include "reig/estimators/mine.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "reig/core/errors.hpp"
#include "reig/core/numeric.hpp"

namespace reig {

Matrix scorer_inputs(const ExperimentModel& model, const Matrix& theta, const Matrix& y) {
  Matrix out(theta.rows() + y.rows(), theta.cols());
  out.topRows(theta.rows()) = theta;
  for (Eigen::Index k = 0; k < y.cols(); ++k) {
    out.col(k).tail(y.rows()) = apply_feature(model.outcome_feature(), y.col(k));
  }
  return out;
}

Matrix shuffle_outcomes(const JointSamples& joint) {
  if (joint.n1 < 2) throw std::invalid_argument("shuffle_outcomes: needs at least two parameter draws");
  const auto block = static_cast<Eigen::Index>(joint.n2);
  const auto total = joint.y.cols();
  Matrix out(joint.y.rows(), total);
  out.leftCols(total - block) = joint.y.rightCols(total - block);
  out.rightCols(block) = joint.y.leftCols(block);
  return out;
}

double mine_objective(const ScorerNetwork& net, const Matrix& joint_inputs, const Matrix& marginal_inputs) {
  const Vector t_joint = net.evaluate(joint_inputs);
  const Vector t_marg = net.evaluate(marginal_inputs);
  return t_joint.mean() - (t_marg.array() - 1.0).exp().mean();
}

Vector mine_objective_gradient(const ScorerNetwork& net, const Matrix& joint_inputs, const Matrix& marginal_inputs) {
  const Vector c_joint = Vector::Constant(joint_inputs.cols(), 1.0 / static_cast<double>(joint_inputs.cols()));
  const Vector c_marg = -(net.evaluate(marginal_inputs).array() - 1.0).exp().matrix() /
                        static_cast<double>(marginal_inputs.cols());
  return net.backprop(joint_inputs, c_joint) + net.backprop(marginal_inputs, c_marg);
}

EigEstimate mine_eig(const ExperimentModel& model, const Design& design, const ScorerNetwork& net,
                     const EstimatorConfig& cfg) {
  validate(cfg);
  if (cfg.n1 < 2) throw std::invalid_argument("mine_eig: n1 must be >= 2");
  const JointSamples joint = sample_joint(model, design, cfg.n1, cfg.n2, RandomStream(cfg.seed));
  const Vector t_joint = net.evaluate(scorer_inputs(model, joint.theta, joint.y));
  const Vector t_marg = net.evaluate(scorer_inputs(model, joint.theta, shuffle_outcomes(joint)));

  DivergenceSamples samples;
  samples.joint.resize(cfg.n1 * cfg.n2);
  samples.d.assign(cfg.n1, 0.0);
  for (std::size_t i = 0; i < cfg.n1; ++i) {
    for (std::size_t k = 0; k < cfg.n2; ++k) {
      const auto col = static_cast<Eigen::Index>(i * cfg.n2 + k);
      const double term = t_joint[col] - std::exp(t_marg[col] - 1.0);
      samples.joint[i * cfg.n2 + k] = term;
    }
    samples.d[i] = reig::mean(std::span<const double>(samples.joint).subspan(i * cfg.n2, cfg.n2));
  }
  EigEstimate e;
  e.value = samples.mean();
  e.standard_error = samples.standard_error();
  e.samples = std::move(samples);
  return e;
}

TrainedScorer train_scorer(const ExperimentModel& model, const Design& design, const EstimatorConfig& cfg,
                           const ScorerTrainingOptions& options) {
  validate(cfg);
  if (options.epochs < 1) throw std::invalid_argument("train_scorer: epochs must be >= 1");
  if (cfg.n1 < 2 || options.batch_size < 2) throw std::invalid_argument("train_scorer: need n1 >= 2 and batch_size >= 2");

  const RandomStream root = RandomStream(cfg.seed).substream(0x6d696e65);  // "mine"
  const JointSamples train = sample_joint(model, design, cfg.n1, cfg.n2, root.substream(0));
  const JointSamples held = sample_joint(model, design, cfg.n1, cfg.n2, root.substream(1));
  const Matrix train_inputs = scorer_inputs(model, train.theta, train.y);
  const Matrix held_joint = scorer_inputs(model, held.theta, held.y);
  const Matrix held_marg = scorer_inputs(model, held.theta, shuffle_outcomes(held));

  RandomStream init_rng = root.substream(2);
  ScorerNetwork net = ScorerNetwork::random(train_inputs.rows(), init_rng);
  {
    const Vector shift = train_inputs.rowwise().mean();
    Vector scale = ((train_inputs.colwise() - shift).array().square().rowwise().mean()).sqrt().matrix();
    for (Eigen::Index k = 0; k < scale.size(); ++k) {
      if (!(scale[k] > 1e-12)) scale[k] = 1.0;
    }
    net.set_standardization(shift, scale);
  }

  const int theta_rows = static_cast<int>(train.theta.rows());
  TrainedScorer result{net, {mine_objective(net, held_joint, held_marg)}, 0};
  double best = result.held_out_objective.front();
  if (std::isnan(best)) throw TrainingFailure("train_scorer: NaN initial objective");

  RandomStream shuffle_rng = root.substream(3);
  const Eigen::Index n = train_inputs.cols();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  Vector params = net.parameters();
  Vector velocity = Vector::Zero(params.size());

  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle_rng() % i]);

    for (Eigen::Index start = 0; start + 1 < n; start += static_cast<Eigen::Index>(options.batch_size)) {
      const Eigen::Index size = std::min(n - start, static_cast<Eigen::Index>(options.batch_size));
      if (size < 2) break;
      Matrix joint(train_inputs.rows(), size);
      Matrix marg(train_inputs.rows(), size);
      for (Eigen::Index b = 0; b < size; ++b) {
        joint.col(b) = train_inputs.col(order[static_cast<std::size_t>(start + b)]);
        const Eigen::Index partner = order[static_cast<std::size_t>(start + (b + 1) % size)];
        marg.col(b).head(theta_rows) = joint.col(b).head(theta_rows);
        marg.col(b).tail(train_inputs.rows() - theta_rows) = train_inputs.col(partner).tail(train_inputs.rows() - theta_rows);
      }
      const Vector grad = mine_objective_gradient(net, joint, marg);
      if (!grad.allFinite()) throw TrainingFailure("train_scorer: non-finite gradient at epoch " + std::to_string(epoch));
      velocity = options.momentum * velocity + options.step_size * grad;
      params += velocity;
      net.set_parameters(params);
    }

    const double objective = mine_objective(net, held_joint, held_marg);
    if (std::isnan(objective)) throw TrainingFailure("train_scorer: NaN objective at epoch " + std::to_string(epoch));
    result.held_out_objective.push_back(objective);
    if (objective > best) {
      best = objective;
      result.best_epoch = epoch;
      result.net = net;
    }
  }
  return result;
}

}  // namespace reig
