#include "reig/proposals/proposal.hpp"

#include <cmath>
#include <stdexcept>

#include "reig/core/numeric.hpp"

namespace reig {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;

Matrix json_to_matrix(const nlohmann::json& rows) {
  const auto values = rows.get<std::vector<std::vector<double>>>();
  if (values.empty()) return Matrix(0, 0);
  Matrix m(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.front().size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto& row = values[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) throw std::invalid_argument("ragged matrix in JSON");
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

Vector json_to_vector(const nlohmann::json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

ParamSamples PriorProposal::propose(const Vector&, RandomStream& rng, std::size_t m) const {
  ParamSamples out = model_->sample_prior(rng, m);
  // re-evaluate through the same path the estimators use, so prior/proposal ratios cancel exactly
  for (Eigen::Index j = 0; j < out.theta.cols(); ++j) {
    out.log_density[static_cast<std::size_t>(j)] = model_->prior_log_density(out.theta.col(j));
  }
  return out;
}

double PriorProposal::log_density(const Vector& theta, const Vector&) const { return model_->prior_log_density(theta); }

AffineGaussianProposal::AffineGaussianProposal(Matrix gain, Vector offset, Vector log_sigma, OutcomeFeature feature)
    : gain_(std::move(gain)), offset_(std::move(offset)), log_sigma_(std::move(log_sigma)), feature_(feature) {
  if (gain_.rows() != offset_.size() || log_sigma_.size() != offset_.size()) {
    throw std::invalid_argument("affine proposal: inconsistent dimensions");
  }
  if (!gain_.allFinite() || !offset_.allFinite() || !log_sigma_.allFinite()) {
    throw std::invalid_argument("affine proposal: non-finite parameters");
  }
}

AffineGaussianProposal AffineGaussianProposal::from_prior(const ExperimentModel& model, const Design& design) {
  return AffineGaussianProposal(Matrix::Zero(model.theta_dim(), model.outcome_dim(design)), model.prior_location(),
                                model.prior_scale().array().log().matrix(), model.outcome_feature());
}

Vector AffineGaussianProposal::mean(const Vector& y) const {
  if (gain_.cols() == 0) return offset_;
  return gain_ * apply_feature(feature_, y) + offset_;
}

ParamSamples AffineGaussianProposal::propose(const Vector& y, RandomStream& rng, std::size_t m) const {
  const Vector mu = mean(y);
  const Vector sigma = log_sigma_.array().exp();
  const double norm = -log_sigma_.sum() - kHalfLog2Pi * static_cast<double>(mu.size());
  ParamSamples out{Matrix(mu.size(), static_cast<Eigen::Index>(m)), std::vector<double>(m)};
  for (Eigen::Index j = 0; j < out.theta.cols(); ++j) {
    double quad = 0.0;
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
      const double e = rng.normal();
      out.theta(k, j) = mu[k] + sigma[k] * e;
      quad += e * e;
    }
    out.log_density[static_cast<std::size_t>(j)] = norm - 0.5 * quad;
  }
  return out;
}

double AffineGaussianProposal::log_density(const Vector& theta, const Vector& y) const {
  const Vector z = (theta - mean(y)).array() / log_sigma_.array().exp();
  return -0.5 * z.squaredNorm() - log_sigma_.sum() - kHalfLog2Pi * static_cast<double>(z.size());
}

nlohmann::json AffineGaussianProposal::to_json() const {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(gain_.rows()));
  for (Eigen::Index r = 0; r < gain_.rows(); ++r) {
    for (Eigen::Index c = 0; c < gain_.cols(); ++c) rows[static_cast<std::size_t>(r)].push_back(gain_(r, c));
  }
  return {{"kind", kind()},
          {"A", rows},
          {"b", std::vector<double>(offset_.data(), offset_.data() + offset_.size())},
          {"log_sigma", std::vector<double>(log_sigma_.data(), log_sigma_.data() + log_sigma_.size())},
          {"feature", feature_ == OutcomeFeature::kLogit ? "logit" : "identity"}};
}

AffineGaussianProposal AffineGaussianProposal::from_json(const nlohmann::json& j) {
  try {
    const std::string feature = j.value("feature", "identity");
    if (feature != "identity" && feature != "logit") throw std::invalid_argument("unknown feature '" + feature + "'");
    Vector offset = json_to_vector(j.at("b"));
    Matrix gain = json_to_matrix(j.at("A"));
    if (gain.size() == 0) gain = Matrix::Zero(offset.size(), 0);
    return AffineGaussianProposal(std::move(gain), std::move(offset), json_to_vector(j.at("log_sigma")),
                                  feature == "logit" ? OutcomeFeature::kLogit : OutcomeFeature::kIdentity);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("affine proposal JSON: ") + e.what());
  }
}

ExactPosterior::ExactPosterior(const ABTestModel& model, const Design& design) {
  const Matrix x = model.design_matrix(model.group_a_size(design));
  const Matrix prior_precision = model.prior_cov().inverse();
  const Matrix precision = prior_precision + x.transpose() * x;
  cov_ = precision.inverse();
  Eigen::LLT<Matrix> llt(cov_);
  if (llt.info() != Eigen::Success) throw std::runtime_error("exact posterior: covariance not positive definite");
  chol_ = llt.matrixL();
  log_det_ = 2.0 * chol_.diagonal().array().log().sum();
  gain_ = cov_ * x.transpose();
  offset_ = cov_ * prior_precision * model.prior_location();
}

ParamSamples ExactPosterior::propose(const Vector& y, RandomStream& rng, std::size_t m) const {
  const Vector mu = mean(y);
  const Eigen::Index dim = mu.size();
  const double norm = -0.5 * log_det_ - kHalfLog2Pi * static_cast<double>(dim);
  ParamSamples out{Matrix(dim, static_cast<Eigen::Index>(m)), std::vector<double>(m)};
  Vector e(dim);
  for (Eigen::Index j = 0; j < out.theta.cols(); ++j) {
    for (Eigen::Index k = 0; k < dim; ++k) e[k] = rng.normal();
    out.theta.col(j) = mu + chol_ * e;
    out.log_density[static_cast<std::size_t>(j)] = norm - 0.5 * e.squaredNorm();
  }
  return out;
}

double ExactPosterior::log_density(const Vector& theta, const Vector& y) const {
  const Vector z = chol_.triangularView<Eigen::Lower>().solve(theta - mean(y));
  return -0.5 * z.squaredNorm() - 0.5 * log_det_ - kHalfLog2Pi * static_cast<double>(z.size());
}

}  // namespace reig
