#include "reig/oracle/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reig {
namespace {

// p log(p / q), with 0 log 0 = 0.
double plogpq(double p, double q) { return p > 0.0 ? p * std::log(p / q) : 0.0; }

void check_probability(double r, const char* what) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

std::array<double, 2> marginal(const LikelihoodTable& lik, double r) {
  return {(1.0 - r) * lik[0][0] + r * lik[1][0], (1.0 - r) * lik[0][1] + r * lik[1][1]};
}

// Solves KL(Bern(x) || Bern(r_p)) = epsilon for x between `inside` (KL 0) and `outside`.
double ball_edge(double r_p, double epsilon, double inside, double outside) {
  if (bernoulli_kl(outside, r_p) <= epsilon) return outside;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    (bernoulli_kl(mid, r_p) <= epsilon ? inside : outside) = mid;
  }
  return inside;
}

template <class F>
GridMinimum minimize_over_ball(double r_p, double epsilon, const BernoulliPriorGrid& grid, F&& objective) {
  const auto [lo, hi] = bernoulli_kl_ball(r_p, epsilon, grid);
  GridMinimum best{objective(r_p), r_p};
  if (epsilon == 0.0) return best;
  auto consider = [&](double r) {
    const double v = objective(r);
    if (v < best.value) best = {v, r};
  };
  consider(lo);
  consider(hi);
  const auto first = std::lower_bound(grid.points.begin(), grid.points.end(), lo);
  const auto last = std::upper_bound(grid.points.begin(), grid.points.end(), hi);
  for (auto it = first; it != last; ++it) consider(*it);
  return best;
}

}  // namespace

BernoulliPriorGrid BernoulliPriorGrid::uniform(std::size_t count, double lo, double hi) {
  if (count < 2 || !(lo > 0.0) || !(hi < 1.0) || !(lo < hi)) {
    throw std::invalid_argument("BernoulliPriorGrid: need count >= 2 and 0 < lo < hi < 1");
  }
  BernoulliPriorGrid g;
  g.points.resize(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) g.points[i] = lo + step * static_cast<double>(i);
  g.points.back() = hi;
  return g;
}

double bernoulli_kl(double q, double p) {
  check_probability(q, "q");
  check_probability(p, "p");
  return plogpq(q, p) + plogpq(1.0 - q, 1.0 - p);
}

double discrete_eig_exact(const DiagnosticTestModel& model, DiagnosticTest test, double r) {
  check_probability(r, "prior probability");
  const LikelihoodTable lik = diagnostic_likelihood_table(model, test);
  const auto py = marginal(lik, r);
  const double weight[2] = {1.0 - r, r};
  double mi = 0.0;
  for (int t = 0; t < 2; ++t) {
    if (weight[t] == 0.0) continue;
    for (int y = 0; y < 2; ++y) mi += weight[t] * plogpq(lik[t][y], py[y]);
  }
  return std::max(mi, 0.0);
}

std::array<double, 2> discrete_divergences(const DiagnosticTestModel& model, DiagnosticTest test, double r) {
  check_probability(r, "prior probability");
  const LikelihoodTable lik = diagnostic_likelihood_table(model, test);
  const auto py = marginal(lik, r);
  std::array<double, 2> d{};
  for (int t = 0; t < 2; ++t) d[t] = plogpq(lik[t][0], py[0]) + plogpq(lik[t][1], py[1]);
  return d;
}

double discrete_iaff_exact(const DiagnosticTestModel& model, DiagnosticTest test, double r_q, double r_p) {
  check_probability(r_q, "r_q");
  const auto d = discrete_divergences(model, test, r_p);
  return (1.0 - r_q) * d[0] + r_q * d[1];
}

std::array<double, 2> bernoulli_kl_ball(double r_p, double epsilon, const BernoulliPriorGrid& grid) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (grid.points.empty()) throw std::invalid_argument("empty prior grid");
  if (!(r_p > 0.0 && r_p < 1.0)) throw std::invalid_argument("reference prior must lie in (0, 1)");
  const double lo = std::min(grid.points.front(), r_p);
  const double hi = std::max(grid.points.back(), r_p);
  return {ball_edge(r_p, epsilon, r_p, lo), ball_edge(r_p, epsilon, r_p, hi)};
}

GridMinimum discrete_reig_grid(const DiagnosticTestModel& model, DiagnosticTest test, double r_p, double epsilon,
                               const BernoulliPriorGrid& grid) {
  const auto d = discrete_divergences(model, test, r_p);
  return minimize_over_ball(r_p, epsilon, grid, [&](double r) { return (1.0 - r) * d[0] + r * d[1]; });
}

GridMinimum discrete_true_reig_grid(const DiagnosticTestModel& model, DiagnosticTest test, double r_p,
                                    double epsilon, const BernoulliPriorGrid& grid) {
  return minimize_over_ball(r_p, epsilon, grid, [&](double r) { return discrete_eig_exact(model, test, r); });
}

DualResult discrete_reig_dual(const DiagnosticTestModel& model, DiagnosticTest test, double r_p, double epsilon) {
  const auto d = discrete_divergences(model, test, r_p);
  const std::array<double, 2> w{1.0 - r_p, r_p};
  return dual_min(d, AmbiguityRadius(epsilon), w);
}

}  // namespace reig
