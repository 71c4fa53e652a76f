#pragma once

#include <memory>
#include <nlohmann/json.hpp>
#include <string>

#include "reig/models/ab_test.hpp"
#include "reig/models/model.hpp"

namespace reig {

/// Importance distribution q(theta | y) for the inner marginal-likelihood
/// estimate. A proposal is bound to one model and one design at construction.
class ConditionalProposal {
 public:
  virtual ~ConditionalProposal() = default;

  /// m i.i.d. draws from q(. | y) with their exact log-densities.
  virtual ParamSamples propose(const Vector& y, RandomStream& rng, std::size_t m) const = 0;
  virtual double log_density(const Vector& theta, const Vector& y) const = 0;
  virtual std::string kind() const = 0;
};

/// q(theta | y) = p(theta): the plain nested Monte Carlo inner estimator.
class PriorProposal final : public ConditionalProposal {
 public:
  explicit PriorProposal(const ExperimentModel& model) : model_(&model) {}

  ParamSamples propose(const Vector& y, RandomStream& rng, std::size_t m) const override;
  double log_density(const Vector& theta, const Vector& y) const override;
  std::string kind() const override { return "prior"; }

 private:
  const ExperimentModel* model_;
};

/// Gaussian q(theta | y) = N(A f(y) + b, diag(exp(log_sigma))^2), with f the
/// model's outcome feature map.
class AffineGaussianProposal final : public ConditionalProposal {
 public:
  AffineGaussianProposal(Matrix gain, Vector offset, Vector log_sigma,
                         OutcomeFeature feature = OutcomeFeature::kIdentity);

  /// A = 0, b = prior location, sigma = prior scale.
  static AffineGaussianProposal from_prior(const ExperimentModel& model, const Design& design);

  const Matrix& gain() const { return gain_; }
  const Vector& offset() const { return offset_; }
  const Vector& log_sigma() const { return log_sigma_; }
  OutcomeFeature feature() const { return feature_; }
  Vector mean(const Vector& y) const;

  ParamSamples propose(const Vector& y, RandomStream& rng, std::size_t m) const override;
  double log_density(const Vector& theta, const Vector& y) const override;
  std::string kind() const override { return "affine"; }

  nlohmann::json to_json() const;
  /// Throws std::invalid_argument on missing fields or inconsistent dimensions.
  static AffineGaussianProposal from_json(const nlohmann::json& j);

 private:
  Matrix gain_;
  Vector offset_;
  Vector log_sigma_;
  OutcomeFeature feature_;
};

/// Conjugate posterior of the A/B model at one design:
/// cov = (Sigma_p^-1 + X^T X)^-1, mean(y) = cov (Sigma_p^-1 mu_p + X^T y).
class ExactPosterior final : public ConditionalProposal {
 public:
  ExactPosterior(const ABTestModel& model, const Design& design);

  const Matrix& covariance() const { return cov_; }
  /// Matrix mapping y to the posterior mean, cov X^T.
  const Matrix& gain() const { return gain_; }
  const Vector& offset() const { return offset_; }
  Vector mean(const Vector& y) const { return gain_ * y + offset_; }

  ParamSamples propose(const Vector& y, RandomStream& rng, std::size_t m) const override;
  double log_density(const Vector& theta, const Vector& y) const override;
  std::string kind() const override { return "exact"; }

 private:
  Matrix cov_;
  Matrix chol_;
  double log_det_ = 0.0;
  Matrix gain_;
  Vector offset_;
};

}  // namespace reig
