#include "reig/models/preference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "reig/core/numeric.hpp"

namespace reig {

PreferenceModel::PreferenceModel(Params params) : params_(params) {
  if (!(params_.prior_sd > 0.0)) throw std::invalid_argument("preference model: prior_sd must be positive");
  if (!(params_.censor_threshold > 0.0 && params_.censor_threshold < 0.5)) {
    throw std::invalid_argument("preference model: censor_threshold must lie in (0, 1/2)");
  }
}

PreferenceModel PreferenceModel::perturbed() {
  Params p;
  p.prior_mean = -7.35;
  return PreferenceModel(p);
}

PreferenceModel PreferenceModel::with_prior_mean(double mean) const {
  Params p = params_;
  p.prior_mean = mean;
  return PreferenceModel(p);
}

std::vector<Design> PreferenceModel::design_grid() const {
  std::vector<Design> grid;
  constexpr int kCount = 101;
  for (int k = 0; k < kCount; ++k) grid.push_back({-80.0 + 160.0 * k / (kCount - 1)});
  return grid;
}

ParamSamples PreferenceModel::sample_prior(RandomStream& rng, std::size_t n) const {
  ParamSamples out{Matrix(1, static_cast<Eigen::Index>(n)), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = params_.prior_mean + params_.prior_sd * rng.normal();
    out.theta(0, static_cast<Eigen::Index>(i)) = t;
    out.log_density[i] = normal_log_pdf(t, params_.prior_mean, params_.prior_sd);
  }
  return out;
}

double PreferenceModel::prior_log_density(const Vector& theta) const {
  return normal_log_pdf(theta[0], params_.prior_mean, params_.prior_sd);
}

Matrix PreferenceModel::sample_likelihood(const Vector& theta, const Design& design, RandomStream& rng,
                                          std::size_t n) const {
  const double xi = design.value;
  const double sd = std::sqrt(1.0 + xi * xi);
  const double gamma = params_.censor_threshold;
  const double lo = logit(gamma);
  const double hi = logit(1.0 - gamma);
  Matrix y(1, static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const double eta = xi - theta[0] + sd * rng.normal();
    if (eta <= lo) {
      y(0, j) = gamma;
    } else if (eta >= hi) {
      y(0, j) = 1.0 - gamma;
    } else {
      y(0, j) = std::clamp(sigmoid(eta), std::nextafter(gamma, 1.0), std::nextafter(1.0 - gamma, 0.0));
    }
  }
  return y;
}

double preference_log_likelihood(const PreferenceModel& model, double theta, double xi, double y) {
  const double gamma = model.params().censor_threshold;
  if (!(y >= gamma && y <= 1.0 - gamma)) {
    throw std::invalid_argument("preference model: response outside [gamma, 1 - gamma]");
  }
  const double loc = xi - theta;
  const double sd = std::sqrt(1.0 + xi * xi);
  if (y == gamma) return normal_log_cdf((logit(gamma) - loc) / sd);
  if (y == 1.0 - gamma) return normal_log_survival((logit(1.0 - gamma) - loc) / sd);
  const double eta = logit(y);
  return normal_log_pdf(eta, loc, sd) - std::log(y) - std::log1p(-y);
}

double PreferenceModel::log_likelihood(const Vector& theta, const Design& design, const Vector& y) const {
  return preference_log_likelihood(*this, theta[0], design.value, y[0]);
}

Vector PreferenceModel::grad_log_joint(const Vector& theta, const Design& design, const Vector& y) const {
  const double xi = design.value;
  const double gamma = params_.censor_threshold;
  const double sd = std::sqrt(1.0 + xi * xi);
  const double loc = xi - theta[0];
  double g = -(theta[0] - params_.prior_mean) / (params_.prior_sd * params_.prior_sd);
  // d(loc)/d(theta) = -1.
  if (y[0] == gamma) {
    const double z = (logit(gamma) - loc) / sd;
    g += std::exp(normal_log_pdf(z, 0.0, 1.0) - normal_log_cdf(z)) / sd;
  } else if (y[0] == 1.0 - gamma) {
    const double z = (logit(1.0 - gamma) - loc) / sd;
    g -= std::exp(normal_log_pdf(z, 0.0, 1.0) - normal_log_survival(z)) / sd;
  } else {
    g -= (logit(y[0]) - loc) / (sd * sd);
  }
  return Vector::Constant(1, g);
}

nlohmann::json PreferenceModel::to_json() const {
  return {{"name", name()},
          {"prior_mean", params_.prior_mean},
          {"prior_sd", params_.prior_sd},
          {"censor_threshold", params_.censor_threshold}};
}

}  // namespace reig
