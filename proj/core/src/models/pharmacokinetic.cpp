#include "reig/models/pharmacokinetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "reig/core/errors.hpp"
#include "reig/core/numeric.hpp"

namespace reig {
namespace {

// k_a / (k_a - k_e) * (exp(-k_e t) - exp(-k_a t)), written so that it stays
// accurate as k_a -> k_e, where it tends to k t exp(-k t).
double absorption_curve(double k_a, double k_e, double t) {
  const double diff = k_a - k_e;
  if (std::abs(diff) * t < 1e-8) return k_a * t * std::exp(-0.5 * (k_a + k_e) * t);
  return k_a * std::exp(-k_e * t) * -std::expm1(-diff * t) / diff;
}

}  // namespace

double pk_mean_response(double k_a, double k_e, double volume, double t, double dose) {
  if (!(k_e > 0.0) || !(k_a > k_e)) throw std::invalid_argument("pk_mean_response: requires k_a > k_e > 0");
  if (!(volume > 0.0)) throw std::invalid_argument("pk_mean_response: requires V > 0");
  if (!(t >= 0.0)) throw std::invalid_argument("pk_mean_response: requires t >= 0");
  return dose / volume * absorption_curve(k_a, k_e, t);
}

PKModel::PKModel(Params params) : params_(params) {
  if (!(params_.prior_variance.array() > 0.0).all()) throw std::invalid_argument("pk model: prior variances must be positive");
  if (!(params_.multiplicative_noise_variance >= 0.0) || !(params_.additive_noise_variance > 0.0)) {
    throw std::invalid_argument("pk model: invalid noise variances");
  }
}

PKModel PKModel::perturbed() {
  Params p;
  p.prior_location[0] = 0.1;
  return PKModel(p);
}

double PKModel::mean_response(const Vector& log_theta, double t) const {
  const double k_a = std::exp(log_theta[0]);
  const double k_e = std::exp(log_theta[1]);
  const double volume = std::exp(log_theta[2]);
  return params_.dose / volume * absorption_curve(k_a, k_e, t);
}

std::vector<Design> PKModel::design_grid() const {
  std::vector<Design> grid;
  constexpr int kCount = 50;
  const double lo = std::log(0.05);
  const double hi = std::log(24.0);
  for (int k = 0; k < kCount; ++k) grid.push_back({std::exp(lo + (hi - lo) * k / (kCount - 1))});
  grid.back().value = 24.0;
  return grid;
}

ParamSamples PKModel::sample_prior(RandomStream& rng, std::size_t n) const {
  ParamSamples out{Matrix(3, static_cast<Eigen::Index>(n)), std::vector<double>(n)};
  const Vector sd = prior_scale();
  Vector z(3);
  for (Eigen::Index i = 0; i < out.theta.cols(); ++i) {
    std::size_t attempts = 0;
    do {
      if (attempts++ == kMaxRejections) throw SamplingFailure("pk model: k_a > k_e rejection exceeded retry cap");
      for (int k = 0; k < 3; ++k) z[k] = params_.prior_location[k] + sd[k] * rng.normal();
    } while (!(z[0] > z[1]));
    out.theta.col(i) = z;
    out.log_density[static_cast<std::size_t>(i)] = prior_log_density(z);
  }
  return out;
}

double PKModel::prior_log_density(const Vector& theta) const {
  double lp = 0.0;
  for (int k = 0; k < 3; ++k) lp += normal_log_pdf(theta[k], params_.prior_location[k], std::sqrt(params_.prior_variance[k]));
  return lp;
}

Matrix PKModel::sample_likelihood(const Vector& theta, const Design& design, RandomStream& rng,
                                  std::size_t n) const {
  const double mu = mean_response(theta, design.value);
  const double sd1 = std::sqrt(params_.multiplicative_noise_variance);
  const double sd2 = std::sqrt(params_.additive_noise_variance);
  Matrix y(1, static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const double e1 = sd1 * rng.normal();
    const double e2 = sd2 * rng.normal();
    y(0, j) = mu * (1.0 + e1) + e2;
  }
  return y;
}

double PKModel::log_likelihood(const Vector& theta, const Design& design, const Vector& y) const {
  const double mu = mean_response(theta, design.value);
  const double var = params_.multiplicative_noise_variance * mu * mu + params_.additive_noise_variance;
  const double e = y[0] - mu;
  return -0.5 * e * e / var - 0.5 * std::log(2.0 * std::numbers::pi * var);
}

nlohmann::json PKModel::to_json() const {
  const auto& p = params_;
  return {{"name", name()},
          {"prior_location", {p.prior_location[0], p.prior_location[1], p.prior_location[2]}},
          {"prior_variance", {p.prior_variance[0], p.prior_variance[1], p.prior_variance[2]}},
          {"dose", p.dose},
          {"multiplicative_noise_variance", p.multiplicative_noise_variance},
          {"additive_noise_variance", p.additive_noise_variance}};
}

}  // namespace reig
