#include "reig/models/model.hpp"

#include <cmath>
#include <fmt/format.h>

#include "reig/core/numeric.hpp"

namespace reig {

Vector apply_feature(OutcomeFeature feature, const Vector& y) {
  switch (feature) {
    case OutcomeFeature::kIdentity:
      return y;
    case OutcomeFeature::kLogit:
      return y.unaryExpr([](double v) { return logit(v); });
  }
  return y;
}

std::string ExperimentModel::design_label(const Design& design) const {
  return fmt::format("{:.12g}", design.value);
}

Vector ExperimentModel::grad_log_joint(const Vector& theta, const Design& design, const Vector& y) const {
  Vector grad(theta.size());
  Vector probe = theta;
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    const double h = 1e-5 * std::max(1.0, std::abs(theta[k]));
    probe[k] = theta[k] + h;
    const double up = prior_log_density(probe) + log_likelihood(probe, design, y);
    probe[k] = theta[k] - h;
    const double down = prior_log_density(probe) + log_likelihood(probe, design, y);
    probe[k] = theta[k];
    grad[k] = (up - down) / (2.0 * h);
  }
  return grad;
}

JointSamples sample_joint(const ExperimentModel& model, const Design& design, std::size_t n1, std::size_t n2,
                          const RandomStream& rng) {
  RandomStream theta_rng = rng.substream(0);
  const ParamSamples prior = model.sample_prior(theta_rng, n1);
  const auto total = static_cast<Eigen::Index>(n1 * n2);
  JointSamples out{Matrix(model.theta_dim(), total), Matrix(model.outcome_dim(design), total), n1, n2};
  const RandomStream outcome_root = rng.substream(1);
  for (std::size_t i = 0; i < n1; ++i) {
    RandomStream y_rng = outcome_root.substream(i);
    const auto theta = prior.theta.col(static_cast<Eigen::Index>(i));
    const Matrix ys = model.sample_likelihood(theta, design, y_rng, n2);
    const auto first = static_cast<Eigen::Index>(i * n2);
    out.theta.middleCols(first, static_cast<Eigen::Index>(n2)).colwise() = theta;
    out.y.middleCols(first, static_cast<Eigen::Index>(n2)) = ys;
  }
  return out;
}

}  // namespace reig
