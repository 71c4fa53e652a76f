#include "reig/oracle/gaussian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reig {

double linear_gaussian_eig(const Matrix& prior_cov, const Matrix& X) {
  if (prior_cov.rows() != prior_cov.cols() || X.cols() != prior_cov.rows()) {
    throw std::invalid_argument("linear_gaussian_eig: shape mismatch");
  }
  const double scale = std::max(1.0, prior_cov.cwiseAbs().maxCoeff());
  if ((prior_cov - prior_cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("linear_gaussian_eig: prior covariance is not symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(prior_cov, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-12 * scale) {
    throw std::invalid_argument("linear_gaussian_eig: prior covariance is not positive semidefinite");
  }
  const Matrix s = Matrix::Identity(X.rows(), X.rows()) + X * prior_cov * X.transpose();
  const Eigen::LLT<Matrix> llt(s);
  // 0.5 log det = sum log L_ii
  return llt.matrixLLT().diagonal().array().log().sum();
}

double gaussian_kl(const Vector& mu1, const Vector& mu0, const Vector& variances) {
  if (mu1.size() != mu0.size() || mu1.size() != variances.size()) {
    throw std::invalid_argument("gaussian_kl: size mismatch");
  }
  if ((variances.array() <= 0.0).any()) throw std::invalid_argument("gaussian_kl: variances must be positive");
  return 0.5 * ((mu1 - mu0).array().square() / variances.array()).sum();
}

double gaussian_kl(const Vector& m1, const Matrix& s1, const Vector& m0, const Matrix& s0) {
  const Eigen::Index k = m1.size();
  if (m0.size() != k || s1.rows() != k || s1.cols() != k || s0.rows() != k || s0.cols() != k) {
    throw std::invalid_argument("gaussian_kl: shape mismatch");
  }
  const Eigen::LLT<Matrix> l0(s0);
  const Eigen::LLT<Matrix> l1(s1);
  if (l0.info() != Eigen::Success || l1.info() != Eigen::Success) {
    throw std::invalid_argument("gaussian_kl: covariances must be positive definite");
  }
  const Vector diff = m0 - m1;
  const double trace = l0.solve(s1).trace();
  const double quad = diff.dot(l0.solve(diff));
  const auto logdet = [](const Eigen::LLT<Matrix>& l) {
    return 2.0 * l.matrixLLT().diagonal().array().log().sum();
  };
  return 0.5 * (trace + quad - static_cast<double>(k) + logdet(l0) - logdet(l1));
}

}  // namespace reig
