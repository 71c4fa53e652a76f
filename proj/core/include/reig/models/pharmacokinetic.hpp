#pragma once

#include "reig/models/model.hpp"

namespace reig {

/// One-compartment pharmacokinetic model with first-order absorption. The
/// parameter vector is held in log space, theta = (log k_a, log k_e, log V),
/// with a Gaussian prior there; draws violating k_a > k_e are rejected. The
/// design is the blood sampling time in hours.
class PKModel final : public ExperimentModel {
 public:
  struct Params {
    Eigen::Vector3d prior_location{0.0, std::log(0.1), std::log(20.0)};
    Eigen::Vector3d prior_variance{0.05, 0.05, 0.05};
    double dose = 400.0;
    double multiplicative_noise_variance = 0.01;
    double additive_noise_variance = 0.1;
  };

  PKModel() : PKModel(Params{}) {}
  explicit PKModel(Params params);

  /// First log-location coordinate moved to 0.1.
  static PKModel perturbed();

  static constexpr std::size_t kMaxRejections = 1'000'000;

  const Params& params() const { return params_; }
  /// Mean concentration at time t for log-space parameters; valid on either
  /// side of k_a = k_e (the formula is symmetric) and at the k_a = k_e limit.
  double mean_response(const Vector& log_theta, double t) const;

  std::string name() const override { return "pk"; }
  Eigen::Index theta_dim() const override { return 3; }
  Eigen::Index outcome_dim(const Design&) const override { return 1; }
  std::vector<Design> design_grid() const override;

  ParamSamples sample_prior(RandomStream& rng, std::size_t n) const override;
  /// Untruncated Gaussian log-density in log-parameter space.
  double prior_log_density(const Vector& theta) const override;
  Matrix sample_likelihood(const Vector& theta, const Design& design, RandomStream& rng,
                           std::size_t n) const override;
  double log_likelihood(const Vector& theta, const Design& design, const Vector& y) const override;

  Vector prior_location() const override { return params_.prior_location; }
  Vector prior_scale() const override { return params_.prior_variance.cwiseSqrt(); }

  nlohmann::json to_json() const override;

 private:
  Params params_;
};

/// (dose / V) * k_a / (k_a - k_e) * (exp(-k_e t) - exp(-k_a t)).
/// Throws std::invalid_argument unless k_a > k_e > 0, V > 0 and t >= 0.
double pk_mean_response(double k_a, double k_e, double volume, double t, double dose = 400.0);

}  // namespace reig
