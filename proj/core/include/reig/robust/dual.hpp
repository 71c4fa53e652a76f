#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "reig/models/model.hpp"

namespace reig {

/// Radius of a KL ambiguity set, in nats.
class AmbiguityRadius {
 public:
  /// Throws std::invalid_argument for negative or NaN radii.
  explicit AmbiguityRadius(double epsilon);
  double value() const { return epsilon_; }

 private:
  double epsilon_;
};

/// Which branch of the dual solve produced the answer.
enum class DualCase {
  kInterior,    ///< 0 < lambda* < inf, found numerically
  kZeroLambda,  ///< lambda* = 0: the extreme order statistic
  kZeroRadius,  ///< epsilon = 0: the (weighted) mean, lambda* = inf
};

enum class DualSense { kMin, kMax };

/// Result of optimizing E_q[d] over q in the KL ball around the empirical
/// (or weighted) distribution of d.
///
/// For kMin, objective = inf_lambda lambda*eps + lambda*log E[exp(-d/lambda)]
/// and robust_value = -objective (the worst-case mean). For kMax,
/// objective = robust_value = inf_lambda lambda*eps + lambda*log E[exp(d/lambda)].
/// subgradient holds d(objective)/d(d_i): minus the softmin weights for kMin
/// (entries <= 0, summing to -1), plus the softmax weights for kMax.
struct DualResult {
  DualSense sense = DualSense::kMin;
  DualCase resolved = DualCase::kInterior;
  double lambda_star = 0.0;
  double objective = 0.0;
  double robust_value = 0.0;
  std::vector<double> subgradient;
  /// Number of entries attaining the extreme value when lambda* = 0.
  std::size_t multiplicity = 0;
};

/// g(lambda) = lambda*eps + lambda*log sum_i w_i exp(-d_i/lambda), with w
/// normalized (equal weights when `weights` is empty). g(0) is the limit -min(d).
double dual_objective(std::span<const double> d, std::span<const double> weights, double epsilon, double lambda);

/// Worst-case mean of d over the KL ball. Weighted when `weights` is given
/// (nonnegative, positive sum); zero-weight entries are ignored.
/// Throws std::invalid_argument on empty or non-finite d or invalid weights.
DualResult dual_min(std::span<const double> d, AmbiguityRadius epsilon, std::span<const double> weights = {});

/// Best-case mean of d over the KL ball.
DualResult dual_max(std::span<const double> d, AmbiguityRadius epsilon, std::span<const double> weights = {});

/// Recomputes the subgradient of result.objective with respect to d.
std::vector<double> subgradient_d(const DualResult& result, std::span<const double> d,
                                  std::span<const double> weights = {});

/// Gradient of result.robust_value with respect to the design, given the
/// Jacobian of d (rows: entries of d, columns: design coordinates).
Vector chain_design_gradient(const DualResult& result, const Matrix& d_jacobian);

}  // namespace reig
