#pragma once

#include "reig/models/model.hpp"

namespace reig {

/// EIG of y = X theta + noise with theta ~ N(mu, prior_cov) and noise
/// ~ N(0, I): 0.5 * log det(I + X prior_cov X^T).
/// Throws std::invalid_argument if prior_cov is not symmetric positive
/// semidefinite or the shapes disagree.
double linear_gaussian_eig(const Matrix& prior_cov, const Matrix& X);

/// KL(N(mu1, diag(variances)) || N(mu0, diag(variances))).
double gaussian_kl(const Vector& mu1, const Vector& mu0, const Vector& variances);

/// KL(N(m1, S1) || N(m0, S0)) for positive definite S1, S0.
double gaussian_kl(const Vector& m1, const Matrix& s1, const Vector& m0, const Matrix& s0);

}  // namespace reig
