#include "reig/estimators/nested.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <stdexcept>

#include "reig/core/errors.hpp"
#include "reig/core/numeric.hpp"

namespace reig {

void validate(const EstimatorConfig& cfg) {
  if (cfg.n1 < 1 || cfg.n2 < 1 || cfg.m < 1) throw std::invalid_argument("estimator config: n1, n2 and m must be >= 1");
}

double DivergenceSamples::mean() const {
  return weights.empty() ? reig::mean(d) : weighted_mean(d, weights);
}

double DivergenceSamples::standard_error() const {
  if (!weights.empty() || d.size() < 2) return 0.0;
  return std::sqrt(sample_variance(d) / static_cast<double>(d.size()));
}

double kl_per_theta(const ExperimentModel& model, const Vector& theta, const Design& design,
                    const ConditionalProposal& proposal, const EstimatorConfig& cfg, InnerScheme scheme,
                    RandomStream& rng, InnerDiagnostics* diagnostics, std::vector<double>* joint) {
  validate(cfg);
  const Matrix ys = model.sample_likelihood(theta, design, rng, cfg.n2);
  const bool contrastive = scheme == InnerScheme::kContrastive;
  std::vector<double> log_w(cfg.m + (contrastive ? 1 : 0));
  double total = 0.0;
  if (joint) joint->resize(cfg.n2);
  for (std::size_t k = 0; k < cfg.n2; ++k) {
    const Vector y = ys.col(static_cast<Eigen::Index>(k));
    const double log_lik = model.log_likelihood(theta, design, y);
    const ParamSamples draws = proposal.propose(y, rng, cfg.m);
    for (std::size_t j = 0; j < cfg.m; ++j) {
      const Vector t = draws.theta.col(static_cast<Eigen::Index>(j));
      log_w[j] = model.log_likelihood(t, design, y) + (model.prior_log_density(t) - draws.log_density[j]);
    }
    if (contrastive) log_w[cfg.m] = log_lik + (model.prior_log_density(theta) - proposal.log_density(theta, y));
    double log_marginal = log_mean_exp(log_w);
    if (std::isnan(log_marginal)) {
      throw EstimatorFailure(fmt::format("inner estimate is NaN (outcome {}, log-likelihood {}, first log-weight {})", k,
                                         log_lik, log_w.front()));
    }
    if (log_marginal < -kLogMarginalClip || log_marginal > kLogMarginalClip) {
      log_marginal = std::clamp(log_marginal, -kLogMarginalClip, kLogMarginalClip);
      if (diagnostics) ++diagnostics->clip_count;
    }
    const double term = log_lik - log_marginal;
    if (!std::isfinite(term)) {
      throw EstimatorFailure(fmt::format("non-finite log ratio {} (outcome {}, log-likelihood {})", term, k, log_lik));
    }
    if (joint) (*joint)[k] = term;
    total += term;
  }
  return total / static_cast<double>(cfg.n2);
}

namespace {

double log_marginal_exact(const ExperimentModel& model, const DiscreteEnumeration& e, const Design& design,
                          const Vector& y) {
  std::vector<double> terms(e.thetas.size());
  for (std::size_t t = 0; t < e.thetas.size(); ++t) terms[t] = model.log_likelihood(e.thetas[t], design, y);
  return log_weighted_sum_exp(terms, e.prior_probs);
}

DiscreteEnumeration require_enumeration(const ExperimentModel& model, const Design& design) {
  auto e = model.enumerate(design);
  if (!e) throw std::invalid_argument("model '" + model.name() + "' has no finite enumeration");
  return *e;
}

}  // namespace

double kl_per_theta_exact(const ExperimentModel& model, const Vector& theta, const Design& design) {
  const DiscreteEnumeration e = require_enumeration(model, design);
  double d = 0.0;
  for (const Vector& y : e.outcomes) {
    const double log_lik = model.log_likelihood(theta, design, y);
    if (log_lik == -std::numeric_limits<double>::infinity()) continue;
    d += std::exp(log_lik) * (log_lik - log_marginal_exact(model, e, design, y));
  }
  return d;
}

DivergenceSamples exact_divergences(const ExperimentModel& model, const Design& design) {
  const DiscreteEnumeration e = require_enumeration(model, design);
  DivergenceSamples out;
  std::vector<double> log_marginal(e.outcomes.size());
  for (std::size_t k = 0; k < e.outcomes.size(); ++k) log_marginal[k] = log_marginal_exact(model, e, design, e.outcomes[k]);
  for (std::size_t t = 0; t < e.thetas.size(); ++t) {
    double d = 0.0;
    for (std::size_t k = 0; k < e.outcomes.size(); ++k) {
      const double log_lik = model.log_likelihood(e.thetas[t], design, e.outcomes[k]);
      const double p = std::exp(log_lik);
      const double ratio = p > 0.0 ? log_lik - log_marginal[k] : 0.0;
      d += p * ratio;
      out.joint.push_back(ratio);
      out.joint_weights.push_back(e.prior_probs[t] * p);
    }
    out.d.push_back(d);
    out.weights.push_back(e.prior_probs[t]);
  }
  return out;
}

DivergenceSamples sample_divergences(const ExperimentModel& model, const Design& design,
                                     const ConditionalProposal& proposal, const EstimatorConfig& cfg,
                                     InnerScheme scheme) {
  validate(cfg);
  if (cfg.enumerate && model.enumerate(design)) return exact_divergences(model, design);

  const RandomStream root(cfg.seed);
  RandomStream theta_rng = root.substream(0);
  const ParamSamples thetas = model.sample_prior(theta_rng, cfg.n1);
  const RandomStream outer = root.substream(1);

  DivergenceSamples out;
  out.d.resize(cfg.n1);
  out.joint.resize(cfg.n1 * cfg.n2);
  std::vector<InnerDiagnostics> diagnostics(cfg.n1);
  parallel_for(cfg.n1, cfg.workers, [&](std::size_t i) {
    RandomStream rng = outer.substream(i);
    std::vector<double> joint;
    out.d[i] = kl_per_theta(model, thetas.theta.col(static_cast<Eigen::Index>(i)), design, proposal, cfg, scheme, rng,
                            &diagnostics[i], &joint);
    std::copy(joint.begin(), joint.end(), out.joint.begin() + static_cast<std::ptrdiff_t>(i * cfg.n2));
  });
  for (const auto& diag : diagnostics) out.clip_count += diag.clip_count;
  return out;
}

namespace {

EigEstimate finish(DivergenceSamples samples) {
  EigEstimate e;
  e.value = samples.mean();
  e.standard_error = samples.standard_error();
  e.samples = std::move(samples);
  return e;
}

}  // namespace

EigEstimate nmc_eig(const ExperimentModel& model, const Design& design, const EstimatorConfig& cfg) {
  const PriorProposal prior(model);
  return finish(sample_divergences(model, design, prior, cfg, InnerScheme::kNested));
}

EigEstimate vnmc_eig(const ExperimentModel& model, const Design& design, const ConditionalProposal& proposal,
                     const EstimatorConfig& cfg) {
  return finish(sample_divergences(model, design, proposal, cfg, InnerScheme::kNested));
}

EigEstimate ace_eig(const ExperimentModel& model, const Design& design, const ConditionalProposal& proposal,
                    const EstimatorConfig& cfg) {
  return finish(sample_divergences(model, design, proposal, cfg, InnerScheme::kContrastive));
}

}  // namespace reig
