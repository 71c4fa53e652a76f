#include "reig/proposals/training.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "reig/core/errors.hpp"
#include "reig/core/numeric.hpp"

namespace reig {
namespace {

// Proposal in preconditioned coordinates:
//   mean = loc + scale .* (gain * W (f(y) - f_mean) + offset),
// with W whitening the training features. Outcomes of the same experiment are
// often strongly correlated; without whitening the gain is badly conditioned.
struct Preconditioned {
  Vector loc;
  Vector scale;
  Vector f_mean;
  Matrix whiten;
  OutcomeFeature feature;
  Matrix gain;
  Vector offset;
  Vector log_sigma;

  Vector standardized(const Vector& y) const {
    return whiten * (apply_feature(feature, y) - f_mean);
  }

  Vector mean(const Vector& f_std) const { return loc + scale.cwiseProduct(gain * f_std + offset); }

  AffineGaussianProposal to_proposal() const {
    const Matrix raw_gain = scale.asDiagonal() * gain * whiten;
    const Vector raw_offset = loc + scale.cwiseProduct(offset - gain * (whiten * f_mean));
    return AffineGaussianProposal(raw_gain, raw_offset, log_sigma, feature);
  }
};

struct Adam {
  explicit Adam(Eigen::Index n) : m(Vector::Zero(n)), v(Vector::Zero(n)) {}

  Vector step(const Vector& grad, double rate) {
    ++t;
    m = beta1 * m + (1.0 - beta1) * grad;
    v = beta2 * v + (1.0 - beta2) * grad.cwiseAbs2();
    const double c1 = 1.0 - std::pow(beta1, t);
    const double c2 = 1.0 - std::pow(beta2, t);
    return -rate * (m / c1).cwiseQuotient(((v / c2).cwiseSqrt().array() + 1e-8).matrix());
  }

  Vector m;
  Vector v;
  int t = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
};

}  // namespace

double vnmc_bound(const ExperimentModel& model, const Design& design, const ConditionalProposal& proposal,
                  const ParamSamples& thetas, const Matrix& outcomes, std::size_t m, RandomStream rng) {
  double total = 0.0;
  std::vector<double> log_w(m);
  for (Eigen::Index i = 0; i < outcomes.cols(); ++i) {
    const Vector y = outcomes.col(i);
    RandomStream inner = rng.substream(static_cast<std::uint64_t>(i));
    const ParamSamples draws = proposal.propose(y, inner, m);
    for (std::size_t j = 0; j < m; ++j) {
      const Vector t = draws.theta.col(static_cast<Eigen::Index>(j));
      log_w[j] = model.prior_log_density(t) + model.log_likelihood(t, design, y) - draws.log_density[j];
    }
    total += model.log_likelihood(thetas.theta.col(i), design, y) - log_mean_exp(log_w);
  }
  return total / static_cast<double>(outcomes.cols());
}

TrainedProposal train_affine_proposal(const ExperimentModel& model, const Design& design, const EstimatorConfig& cfg,
                                      const ProposalTrainingOptions& options) {
  validate(cfg);
  if (options.epochs < 1) throw std::invalid_argument("train_affine_proposal: epochs must be >= 1");
  if (options.batch_size < 1 || options.inner_samples < 1) {
    throw std::invalid_argument("train_affine_proposal: batch_size and inner_samples must be >= 1");
  }
  const RandomStream root = RandomStream(cfg.seed).substream(0x70726f70);  // "prop"
  const JointSamples train = sample_joint(model, design, cfg.n1, cfg.n2, root.substream(0));
  const JointSamples held = sample_joint(model, design, cfg.n1, cfg.n2, root.substream(1));
  const RandomStream held_noise = root.substream(2);
  const Eigen::Index n_train = train.y.cols();
  const Eigen::Index dim = model.theta_dim();

  Preconditioned q;
  q.loc = model.prior_location();
  q.scale = model.prior_scale();
  q.feature = model.outcome_feature();
  {
    Matrix feats(train.y.rows(), n_train);
    for (Eigen::Index i = 0; i < n_train; ++i) feats.col(i) = apply_feature(q.feature, train.y.col(i));
    q.f_mean = feats.rowwise().mean();
    const Matrix centered = feats.colwise() - q.f_mean;
    const Matrix cov = centered * centered.transpose() / static_cast<double>(n_train);
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    const double floor = 1e-12 * std::max(1.0, eig.eigenvalues().maxCoeff());
    Vector inv_sqrt(cov.rows());
    for (Eigen::Index k = 0; k < inv_sqrt.size(); ++k) {
      const double ev = eig.eigenvalues()[k];
      inv_sqrt[k] = ev > floor ? 1.0 / std::sqrt(ev) : 0.0;
    }
    q.whiten = inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
  }
  q.gain = Matrix::Zero(dim, train.y.rows());
  q.offset = Vector::Zero(dim);
  q.log_sigma = q.scale.array().log();

  const ParamSamples held_thetas{held.theta, std::vector<double>(static_cast<std::size_t>(held.theta.cols()))};
  auto score = [&](const Preconditioned& p) {
    return vnmc_bound(model, design, p.to_proposal(), held_thetas, held.y, cfg.m, held_noise);
  };

  TrainedProposal result{q.to_proposal(), {score(q)}, 0};
  std::vector<AffineGaussianProposal> checkpoints;
  checkpoints.reserve(static_cast<std::size_t>(options.epochs));

  const Eigen::Index n_gain = q.gain.size();
  const Eigen::Index n_params = n_gain + 2 * dim;
  Adam adam(n_params);
  const auto batches_per_epoch = static_cast<int>((n_train + static_cast<Eigen::Index>(options.batch_size) - 1) /
                                                  static_cast<Eigen::Index>(options.batch_size));
  const int total_steps = options.epochs * batches_per_epoch;
  RandomStream noise = root.substream(3);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n_train));
  std::vector<double> log_w(options.inner_samples);
  Matrix grads(dim, static_cast<Eigen::Index>(options.inner_samples));
  Matrix eps(dim, static_cast<Eigen::Index>(options.inner_samples));
  int step = 0;

  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[noise() % i]);

    for (Eigen::Index start = 0; start < n_train; start += static_cast<Eigen::Index>(options.batch_size)) {
      const Eigen::Index stop = std::min(n_train, start + static_cast<Eigen::Index>(options.batch_size));
      Matrix grad_gain = Matrix::Zero(dim, q.gain.cols());
      Vector grad_offset = Vector::Zero(dim);
      Vector grad_log_sigma = Vector::Zero(dim);
      const Vector sigma = q.log_sigma.array().exp();
      for (Eigen::Index b = start; b < stop; ++b) {
        const Vector y = train.y.col(order[static_cast<std::size_t>(b)]);
        const Vector f = q.standardized(y);
        const Vector mu = q.mean(f);
        for (std::size_t j = 0; j < options.inner_samples; ++j) {
          const auto col = static_cast<Eigen::Index>(j);
          for (Eigen::Index k = 0; k < dim; ++k) eps(k, col) = noise.normal();
          const Vector t = mu + sigma.cwiseProduct(eps.col(col));
          const double log_q = -q.log_sigma.sum() - 0.5 * eps.col(col).squaredNorm();
          log_w[j] = model.prior_log_density(t) + model.log_likelihood(t, design, y) - log_q;
          grads.col(col) = model.grad_log_joint(t, design, y);
        }
        // loss = -log mean_j w_j; softmax weights a_j distribute its gradient.
        const double lse = log_sum_exp(log_w);
        Vector d_mu = Vector::Zero(dim);
        Vector d_log_sigma = Vector::Zero(dim);
        for (std::size_t j = 0; j < options.inner_samples; ++j) {
          const auto col = static_cast<Eigen::Index>(j);
          const double a = std::exp(log_w[j] - lse);
          // Path derivative only: the score term of log q has zero mean and is
          // dropped, so the gradient vanishes identically once q is the posterior.
          const Vector path = grads.col(col) + eps.col(col).cwiseQuotient(sigma);
          d_mu -= a * path;
          d_log_sigma -= a * path.cwiseProduct(sigma).cwiseProduct(eps.col(col));
        }
        const Vector d_pre = q.scale.cwiseProduct(d_mu);
        grad_gain += d_pre * f.transpose();
        grad_offset += d_pre;
        grad_log_sigma += d_log_sigma;
      }
      const double inv = 1.0 / static_cast<double>(stop - start);
      Vector grad(n_params);
      grad << Eigen::Map<const Vector>(grad_gain.data(), n_gain) * inv, grad_offset * inv, grad_log_sigma * inv;
      if (!grad.allFinite()) {
        throw TrainingFailure("train_affine_proposal: non-finite gradient at epoch " + std::to_string(epoch));
      }
      const double rate =
          options.step_size * 0.5 * (1.0 + std::cos(std::numbers::pi * static_cast<double>(step) / total_steps));
      const Vector delta = adam.step(grad, rate);
      Eigen::Map<Vector>(q.gain.data(), n_gain) += delta.head(n_gain);
      q.offset += delta.segment(n_gain, dim);
      q.log_sigma += delta.tail(dim);
      ++step;
    }

    const double bound = score(q);
    if (std::isnan(bound)) throw TrainingFailure("train_affine_proposal: NaN held-out bound at epoch " + std::to_string(epoch));
    result.held_out_bound.push_back(bound);
    checkpoints.push_back(q.to_proposal());
  }

  // Near the optimum the held-out bound is flat up to sampling noise, and the
  // plain argmin tends to land on an early, unconverged epoch. Take the latest
  // epoch within the tolerance of the minimum that does not lose to the start.
  const auto& bounds = result.held_out_bound;
  const double best = *std::min_element(bounds.begin(), bounds.end());
  for (int epoch = options.epochs; epoch >= 1; --epoch) {
    const double b = bounds[static_cast<std::size_t>(epoch)];
    if (b <= best + options.selection_tolerance && b <= bounds.front()) {
      result.best_epoch = epoch;
      result.proposal = checkpoints[static_cast<std::size_t>(epoch - 1)];
      break;
    }
  }
  return result;
}

}  // namespace reig
