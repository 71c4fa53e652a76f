#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "reig/models/diagnostic.hpp"
#include "reig/robust/dual.hpp"

namespace reig {

/// Candidate prior probabilities for the one-parameter Bernoulli prior family,
/// strictly inside (0, 1) so every KL divergence is finite.
struct BernoulliPriorGrid {
  std::vector<double> points;

  /// `count` equally spaced points on [lo, hi]; count >= 2, 0 < lo < hi < 1.
  static BernoulliPriorGrid uniform(std::size_t count = 100000, double lo = 1e-6, double hi = 1.0 - 1e-6);
};

/// KL(Bern(q) || Bern(p)).
double bernoulli_kl(double q, double p);

/// Mutual information between the condition and the result of `test` when the
/// condition has prior probability r (the model's own prior is ignored).
double discrete_eig_exact(const DiagnosticTestModel& model, DiagnosticTest test, double r);

/// Per-state divergences sum_y p(y|theta) log(p(y|theta) / p_r(y)) for
/// theta = healthy, sick, with p_r the marginal under prior probability r.
std::array<double, 2> discrete_divergences(const DiagnosticTestModel& model, DiagnosticTest test, double r);

/// E_{q(theta, y)} log(p(y|theta) / p_p(y)) with q = Bern(r_q), p = Bern(r_p).
double discrete_iaff_exact(const DiagnosticTestModel& model, DiagnosticTest test, double r_q, double r_p);

struct GridMinimum {
  double value = 0.0;
  double argmin = 0.0;
};

/// The closed KL ball {r : KL(Bern(r) || Bern(r_p)) <= epsilon} intersected
/// with the grid's range, as an interval [lo, hi].
std::array<double, 2> bernoulli_kl_ball(double r_p, double epsilon, const BernoulliPriorGrid& grid);

/// Minimum of discrete_iaff_exact(., r_p) over the grid points in the KL ball,
/// plus r_p itself and the ball's end points.
GridMinimum discrete_reig_grid(const DiagnosticTestModel& model, DiagnosticTest test, double r_p, double epsilon,
                               const BernoulliPriorGrid& grid);

/// Minimum of the exact EIG over the same candidate set (the non-convex
/// worst case over priors).
GridMinimum discrete_true_reig_grid(const DiagnosticTestModel& model, DiagnosticTest test, double r_p,
                                    double epsilon, const BernoulliPriorGrid& grid);

/// The same robust value through the prior-weighted dual on the two exact
/// per-state divergences.
DualResult discrete_reig_dual(const DiagnosticTestModel& model, DiagnosticTest test, double r_p, double epsilon);

}  // namespace reig
