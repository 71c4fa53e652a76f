#include "reig/robust/dual.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "reig/core/numeric.hpp"

namespace reig {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Validated view of (d, w) with w normalized.
struct Support {
  std::vector<double> w;
  double lowest = kInf;
  double highest = -kInf;
  double mean = 0.0;
  double lowest_mass = 0.0;
  std::size_t lowest_index = 0;
  std::size_t multiplicity = 0;
};

Support make_support(std::span<const double> d, std::span<const double> weights) {
  if (d.empty()) throw std::invalid_argument("dual solve: empty divergence vector");
  if (!weights.empty() && weights.size() != d.size()) throw std::invalid_argument("dual solve: weight size mismatch");
  Support s;
  s.w.assign(d.size(), 1.0 / static_cast<double>(d.size()));
  if (!weights.empty()) {
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("dual solve: weights must be finite and >= 0");
      total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("dual solve: weights sum to zero");
    for (std::size_t i = 0; i < d.size(); ++i) s.w[i] = weights[i] / total;
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i])) throw std::invalid_argument("dual solve: non-finite divergence");
    if (s.w[i] == 0.0) continue;
    if (d[i] < s.lowest) {
      s.lowest = d[i];
      s.lowest_index = i;
    }
    s.highest = std::max(s.highest, d[i]);
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (s.w[i] > 0.0 && d[i] == s.lowest) {
      s.lowest_mass += s.w[i];
      ++s.multiplicity;
    }
  }
  // Same reductions as DivergenceSamples::mean, so epsilon = 0 reproduces the
  // plain estimate bit for bit.
  s.mean = std::clamp(weights.empty() ? mean(d) : weighted_mean(d, weights), s.lowest, s.highest);
  return s;
}

// lambda*eps - min(d) + lambda*log sum_i w_i exp(-(d_i - min d)/lambda)
double objective(std::span<const double> d, const Support& s, double epsilon, double lambda) {
  if (lambda == 0.0) return -s.lowest;
  if (lambda == kInf) return epsilon > 0.0 ? kInf : -s.mean;
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (s.w[i] > 0.0) sum += s.w[i] * std::exp(-(d[i] - s.lowest) / lambda);
  }
  return lambda * epsilon - s.lowest + lambda * std::log(sum);
}

std::vector<double> softmin_gradient(std::span<const double> d, const Support& s, double lambda) {
  std::vector<double> g(d.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (s.w[i] > 0.0) {
      g[i] = s.w[i] * std::exp(-(d[i] - s.lowest) / lambda);
      total += g[i];
    }
  }
  for (double& x : g) x = -x / total;
  return g;
}

DualResult solve_min(std::span<const double> d, double epsilon, std::span<const double> weights) {
  const Support s = make_support(d, weights);
  DualResult r;
  r.sense = DualSense::kMin;

  if (epsilon == 0.0) {
    r.resolved = DualCase::kZeroRadius;
    r.lambda_star = kInf;
    r.objective = -s.mean;
    r.robust_value = s.mean;
    r.subgradient.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) r.subgradient[i] = -s.w[i];
    return r;
  }

  // g'(0+) = eps + log(mass at the minimum); nonnegative means lambda* = 0.
  if (s.highest == s.lowest || epsilon + std::log(s.lowest_mass) >= 0.0) {
    r.resolved = DualCase::kZeroLambda;
    r.lambda_star = 0.0;
    r.objective = -s.lowest;
    r.robust_value = s.lowest;
    r.multiplicity = s.multiplicity;
    r.subgradient.assign(d.size(), 0.0);
    r.subgradient[s.lowest_index] = -1.0;
    return r;
  }

  const double spread = s.highest - s.lowest;
  const double lo = std::log(1e-8 * spread);
  const double hi = std::log(spread * std::max(1e8, 1.0 / std::sqrt(epsilon)));
  auto in_log_lambda = [&](double log_lambda) { return objective(d, s, epsilon, std::exp(log_lambda)); };
  std::uintmax_t max_iter = 500;
  const auto [log_lambda, value] = boost::math::tools::brent_find_minima(
      in_log_lambda, lo, hi, std::numeric_limits<double>::digits / 2 + 4, max_iter);

  r.resolved = DualCase::kInterior;
  r.lambda_star = std::exp(log_lambda);
  // The optimum lies between the two limiting cases; clamp rounding noise.
  r.robust_value = std::clamp(-value, s.lowest, s.mean);
  r.objective = -r.robust_value;
  r.subgradient = softmin_gradient(d, s, r.lambda_star);
  return r;
}

}  // namespace

AmbiguityRadius::AmbiguityRadius(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("ambiguity radius must be >= 0");
}

double dual_objective(std::span<const double> d, std::span<const double> weights, double epsilon, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("dual_objective: lambda must be >= 0");
  return objective(d, make_support(d, weights), epsilon, lambda);
}

DualResult dual_min(std::span<const double> d, AmbiguityRadius epsilon, std::span<const double> weights) {
  return solve_min(d, epsilon.value(), weights);
}

DualResult dual_max(std::span<const double> d, AmbiguityRadius epsilon, std::span<const double> weights) {
  std::vector<double> negated(d.begin(), d.end());
  for (double& x : negated) x = -x;
  DualResult r = solve_min(negated, epsilon.value(), weights);
  r.sense = DualSense::kMax;
  r.robust_value = -r.robust_value;
  r.objective = r.robust_value;
  for (double& g : r.subgradient) g = -g;
  return r;
}

std::vector<double> subgradient_d(const DualResult& result, std::span<const double> d,
                                  std::span<const double> weights) {
  std::vector<double> values(d.begin(), d.end());
  const double sign = result.sense == DualSense::kMin ? 1.0 : -1.0;
  for (double& x : values) x *= sign;
  const Support s = make_support(values, weights);
  std::vector<double> g;
  switch (result.resolved) {
    case DualCase::kZeroRadius:
      g.resize(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) g[i] = -s.w[i];
      break;
    case DualCase::kZeroLambda:
      g.assign(d.size(), 0.0);
      g[s.lowest_index] = -1.0;
      break;
    case DualCase::kInterior:
      g = softmin_gradient(values, s, result.lambda_star);
      break;
  }
  for (double& x : g) x *= sign;
  return g;
}

Vector chain_design_gradient(const DualResult& result, const Matrix& d_jacobian) {
  if (static_cast<std::size_t>(d_jacobian.rows()) != result.subgradient.size()) {
    throw std::invalid_argument("chain_design_gradient: Jacobian rows must match the divergence count");
  }
  const Eigen::Map<const Vector> g(result.subgradient.data(), d_jacobian.rows());
  // robust value is -objective for kMin and +objective for kMax.
  const double sign = result.sense == DualSense::kMin ? -1.0 : 1.0;
  return sign * (d_jacobian.transpose() * g);
}

}  // namespace reig
