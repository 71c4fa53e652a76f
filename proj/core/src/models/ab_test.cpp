#include "reig/models/ab_test.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace reig {

ABTestModel::ABTestModel(Params params) : params_(params) {
  if (params_.n < 1) throw std::invalid_argument("ab model: n must be positive");
  if (!(params_.prior_sd.array() > 0.0).all()) throw std::invalid_argument("ab model: prior_sd must be positive");
}

ABTestModel ABTestModel::perturbed() {
  Params p;
  p.prior_mean = {4.46, 0.0};
  return ABTestModel(p);
}

Eigen::Matrix2d ABTestModel::prior_cov() const {
  return params_.prior_sd.array().square().matrix().asDiagonal();
}

int ABTestModel::group_a_size(const Design& design) const {
  const double v = design.value;
  if (v != std::floor(v) || v < 0.0 || v > params_.n) {
    throw std::invalid_argument("ab model: n_A must be an integer in [0, n]");
  }
  return static_cast<int>(v);
}

Matrix ABTestModel::design_matrix(int n_a) const {
  if (n_a < 0 || n_a > params_.n) throw std::invalid_argument("ab model: n_A out of range");
  Matrix x = Matrix::Zero(params_.n, 2);
  x.col(0).head(n_a).setOnes();
  x.col(1).tail(params_.n - n_a).setOnes();
  return x;
}

Matrix ab_design_matrix(const ABTestModel& model, int n_a) { return model.design_matrix(n_a); }

std::vector<Design> ABTestModel::design_grid() const {
  std::vector<Design> grid;
  for (int k = 0; k <= params_.n; ++k) grid.push_back({static_cast<double>(k)});
  return grid;
}

std::string ABTestModel::design_label(const Design& design) const {
  return std::to_string(group_a_size(design));
}

ParamSamples ABTestModel::sample_prior(RandomStream& rng, std::size_t n) const {
  ParamSamples out{Matrix(2, static_cast<Eigen::Index>(n)), std::vector<double>(n)};
  for (Eigen::Index i = 0; i < out.theta.cols(); ++i) {
    for (int k = 0; k < 2; ++k) out.theta(k, i) = params_.prior_mean[k] + params_.prior_sd[k] * rng.normal();
    out.log_density[static_cast<std::size_t>(i)] = prior_log_density(out.theta.col(i));
  }
  return out;
}

double ABTestModel::prior_log_density(const Vector& theta) const {
  double lp = 0.0;
  for (int k = 0; k < 2; ++k) {
    const double z = (theta[k] - params_.prior_mean[k]) / params_.prior_sd[k];
    lp += -0.5 * z * z - std::log(params_.prior_sd[k]);
  }
  return lp - std::log(2.0 * std::numbers::pi);
}

Matrix ABTestModel::sample_likelihood(const Vector& theta, const Design& design, RandomStream& rng,
                                      std::size_t n) const {
  const int n_a = group_a_size(design);
  Matrix y(params_.n, static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    for (int r = 0; r < params_.n; ++r) y(r, j) = (r < n_a ? theta[0] : theta[1]) + rng.normal();
  }
  return y;
}

double ABTestModel::log_likelihood(const Vector& theta, const Design& design, const Vector& y) const {
  const int n_a = group_a_size(design);
  double ss = 0.0;
  for (int r = 0; r < params_.n; ++r) {
    const double e = y[r] - (r < n_a ? theta[0] : theta[1]);
    ss += e * e;
  }
  return -0.5 * ss - 0.5 * params_.n * std::log(2.0 * std::numbers::pi);
}

Vector ABTestModel::grad_log_joint(const Vector& theta, const Design& design, const Vector& y) const {
  const int n_a = group_a_size(design);
  Vector g(2);
  for (int k = 0; k < 2; ++k) {
    g[k] = -(theta[k] - params_.prior_mean[k]) / (params_.prior_sd[k] * params_.prior_sd[k]);
  }
  for (int r = 0; r < params_.n; ++r) {
    const int k = r < n_a ? 0 : 1;
    g[k] += y[r] - theta[k];
  }
  return g;
}

nlohmann::json ABTestModel::to_json() const {
  return {{"name", name()},
          {"n", params_.n},
          {"prior_mean", {params_.prior_mean[0], params_.prior_mean[1]}},
          {"prior_sd", {params_.prior_sd[0], params_.prior_sd[1]}}};
}

}  // namespace reig
