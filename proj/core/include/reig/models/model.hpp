#pragma once

#include <Eigen/Dense>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "reig/core/random.hpp"

namespace reig {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point in a model's design space. Every benchmark has a scalar design
/// (test index, group-A size, offered value, sampling time).
struct Design {
  double value = 0.0;

  friend bool operator==(const Design&, const Design&) = default;
};

/// Column-major parameter draws (theta_dim x n) with their log-densities
/// under whatever distribution produced them.
struct ParamSamples {
  Matrix theta;
  std::vector<double> log_density;

  std::size_t size() const { return log_density.size(); }
};

/// Map applied to an outcome before it enters an affine proposal or a scorer
/// network.
enum class OutcomeFeature { kIdentity, kLogit };

Vector apply_feature(OutcomeFeature feature, const Vector& y);

/// Finite parameter and outcome supports with prior probabilities, for models
/// whose EIG can be computed by exact summation.
struct DiscreteEnumeration {
  std::vector<Vector> thetas;
  std::vector<double> prior_probs;
  std::vector<Vector> outcomes;
};

/// Prior, likelihood and design grid of one experiment.
///
/// All densities are in the log domain. Discrete models report log
/// probabilities in place of log densities. Implementations are immutable and
/// every method may be called concurrently.
class ExperimentModel {
 public:
  virtual ~ExperimentModel() = default;

  virtual std::string name() const = 0;
  virtual Eigen::Index theta_dim() const = 0;
  virtual Eigen::Index outcome_dim(const Design& design) const = 0;
  virtual std::vector<Design> design_grid() const = 0;
  /// Human-readable design label used in CSV output.
  virtual std::string design_label(const Design& design) const;

  virtual ParamSamples sample_prior(RandomStream& rng, std::size_t n) const = 0;
  virtual double prior_log_density(const Vector& theta) const = 0;

  /// y_dim x n matrix of outcomes drawn from p(y | theta, design).
  virtual Matrix sample_likelihood(const Vector& theta, const Design& design, RandomStream& rng,
                                   std::size_t n) const = 0;
  virtual double log_likelihood(const Vector& theta, const Design& design, const Vector& y) const = 0;

  /// Gradient of log p(theta) + log p(y | theta, design) in theta. The default
  /// uses central differences.
  virtual Vector grad_log_joint(const Vector& theta, const Design& design, const Vector& y) const;

  /// Per-coordinate location and scale of the prior, used to initialize and
  /// precondition proposals.
  virtual Vector prior_location() const = 0;
  virtual Vector prior_scale() const = 0;

  virtual OutcomeFeature outcome_feature() const { return OutcomeFeature::kIdentity; }

  virtual std::optional<DiscreteEnumeration> enumerate(const Design& /*design*/) const {
    return std::nullopt;
  }

  virtual nlohmann::json to_json() const = 0;
};

/// n1 prior draws with n2 outcomes each, stored parameter-major: column
/// i * n2 + k holds (theta_i, y_ik). Parameters come from rng.substream(0) and
/// the outcomes of draw i from rng.substream(1).substream(i), matching the
/// layout of the nested estimators.
struct JointSamples {
  Matrix theta;
  Matrix y;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

JointSamples sample_joint(const ExperimentModel& model, const Design& design, std::size_t n1, std::size_t n2,
                          const RandomStream& rng);

}  // namespace reig
