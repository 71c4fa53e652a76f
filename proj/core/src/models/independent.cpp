#include "reig/models/independent.hpp"

#include "reig/core/numeric.hpp"

namespace reig {

ParamSamples IndependentToyModel::sample_prior(RandomStream& rng, std::size_t n) const {
  ParamSamples out{Matrix(1, static_cast<Eigen::Index>(n)), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.normal();
    out.theta(0, static_cast<Eigen::Index>(i)) = t;
    out.log_density[i] = normal_log_pdf(t, 0.0, 1.0);
  }
  return out;
}

double IndependentToyModel::prior_log_density(const Vector& theta) const { return normal_log_pdf(theta[0], 0.0, 1.0); }

Matrix IndependentToyModel::sample_likelihood(const Vector&, const Design&, RandomStream& rng, std::size_t n) const {
  Matrix y(1, static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < y.cols(); ++j) y(0, j) = rng.normal();
  return y;
}

double IndependentToyModel::log_likelihood(const Vector&, const Design&, const Vector& y) const {
  return normal_log_pdf(y[0], 0.0, 1.0);
}

}  // namespace reig
