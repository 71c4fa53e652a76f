#pragma once

#include "reig/models/model.hpp"

namespace reig {

/// Group-size selection for an A/B test: n participants, n_A of them in
/// group A. Each participant's response is its group's effect plus unit
/// Gaussian noise, y | theta ~ N(X theta, I), theta ~ N(mu, diag(sd^2)).
class ABTestModel final : public ExperimentModel {
 public:
  struct Params {
    int n = 10;
    Eigen::Vector2d prior_mean{0.0, 0.0};
    Eigen::Vector2d prior_sd{10.0, 1.82};
  };

  ABTestModel() : ABTestModel(Params{}) {}
  explicit ABTestModel(Params params);

  /// Prior mean shifted to [4.46, 0].
  static ABTestModel perturbed();

  const Params& params() const { return params_; }
  int n() const { return params_.n; }
  Eigen::Matrix2d prior_cov() const;
  /// Validated group-A size carried by a design.
  int group_a_size(const Design& design) const;
  /// n x 2 one-hot group indicator matrix: first n_A rows (1,0), the rest (0,1).
  Matrix design_matrix(int n_a) const;

  std::string name() const override { return "ab"; }
  Eigen::Index theta_dim() const override { return 2; }
  Eigen::Index outcome_dim(const Design&) const override { return params_.n; }
  std::vector<Design> design_grid() const override;
  std::string design_label(const Design& design) const override;

  ParamSamples sample_prior(RandomStream& rng, std::size_t n) const override;
  double prior_log_density(const Vector& theta) const override;
  Matrix sample_likelihood(const Vector& theta, const Design& design, RandomStream& rng,
                           std::size_t n) const override;
  double log_likelihood(const Vector& theta, const Design& design, const Vector& y) const override;
  Vector grad_log_joint(const Vector& theta, const Design& design, const Vector& y) const override;

  Vector prior_location() const override { return params_.prior_mean; }
  Vector prior_scale() const override { return params_.prior_sd; }

  nlohmann::json to_json() const override;

 private:
  Params params_;
};

Matrix ab_design_matrix(const ABTestModel& model, int n_a);

}  // namespace reig
