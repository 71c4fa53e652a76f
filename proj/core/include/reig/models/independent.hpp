#pragma once

#include "reig/models/model.hpp"

namespace reig {

/// Toy model whose likelihood ignores theta: theta ~ N(0,1), y ~ N(0,1).
/// Every design has zero information gain.
class IndependentToyModel final : public ExperimentModel {
 public:
  std::string name() const override { return "independent"; }
  Eigen::Index theta_dim() const override { return 1; }
  Eigen::Index outcome_dim(const Design&) const override { return 1; }
  std::vector<Design> design_grid() const override { return {{0.0}, {1.0}}; }

  ParamSamples sample_prior(RandomStream& rng, std::size_t n) const override;
  double prior_log_density(const Vector& theta) const override;
  Matrix sample_likelihood(const Vector& theta, const Design& design, RandomStream& rng,
                           std::size_t n) const override;
  double log_likelihood(const Vector& theta, const Design& design, const Vector& y) const override;

  Vector prior_location() const override { return Vector::Zero(1); }
  Vector prior_scale() const override { return Vector::Ones(1); }

  nlohmann::json to_json() const override { return {{"name", name()}}; }
};

}  // namespace reig
