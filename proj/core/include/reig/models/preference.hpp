#pragma once

#include "reig/models/model.hpp"

namespace reig {

/// Consumer preference experiment. A subject with location theta is offered
/// the value xi; the latent response eta ~ N(xi - theta, 1 + xi^2) is squashed
/// through a sigmoid and censored to [gamma, 1 - gamma]. The two censoring
/// points carry probability atoms.
class PreferenceModel final : public ExperimentModel {
 public:
  struct Params {
    double prior_mean = 0.0;
    double prior_sd = 20.0;
    double censor_threshold = 0.005;
  };

  PreferenceModel() : PreferenceModel(Params{}) {}
  explicit PreferenceModel(Params params);

  /// Prior mean moved to -7.35.
  static PreferenceModel perturbed();

  const Params& params() const { return params_; }
  PreferenceModel with_prior_mean(double mean) const;

  std::string name() const override { return "preference"; }
  Eigen::Index theta_dim() const override { return 1; }
  Eigen::Index outcome_dim(const Design&) const override { return 1; }
  std::vector<Design> design_grid() const override;

  ParamSamples sample_prior(RandomStream& rng, std::size_t n) const override;
  double prior_log_density(const Vector& theta) const override;
  Matrix sample_likelihood(const Vector& theta, const Design& design, RandomStream& rng,
                           std::size_t n) const override;
  double log_likelihood(const Vector& theta, const Design& design, const Vector& y) const override;
  Vector grad_log_joint(const Vector& theta, const Design& design, const Vector& y) const override;

  Vector prior_location() const override { return Vector::Constant(1, params_.prior_mean); }
  Vector prior_scale() const override { return Vector::Constant(1, params_.prior_sd); }
  OutcomeFeature outcome_feature() const override { return OutcomeFeature::kLogit; }

  nlohmann::json to_json() const override;

 private:
  Params params_;
};

/// Log-likelihood of a censored response y in [gamma, 1 - gamma]: log mass at
/// the two atoms, log density (with the logit Jacobian) in the interior.
/// Throws std::invalid_argument for y outside the range.
double preference_log_likelihood(const PreferenceModel& model, double theta, double xi, double y);

}  // namespace reig
