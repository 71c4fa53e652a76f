#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "reig/core/numeric.hpp"
#include "reig/estimators/nested.hpp"
#include "reig/models/ab_test.hpp"
#include "reig/models/pharmacokinetic.hpp"
#include "reig/models/preference.hpp"
#include "reig/proposals/proposal.hpp"
#include "reig/proposals/training.hpp"

namespace reig {
namespace {

TEST(PriorProposal, DrawsFollowThePriorRegardlessOfOutcome) {
  const ABTestModel m = ABTestModel::perturbed();
  const PriorProposal q(m);
  RandomStream rng(1);
  const Vector y = Vector::Constant(10, 50.0);
  const auto draws = q.propose(y, rng, 100000);
  const Vector mean = draws.theta.rowwise().mean();
  EXPECT_NEAR(mean[0], 4.46, 4.0 * 10.0 / std::sqrt(1e5));
  EXPECT_NEAR(mean[1], 0.0, 4.0 * 1.82 / std::sqrt(1e5));
  EXPECT_DOUBLE_EQ(q.log_density(draws.theta.col(0), y), m.prior_log_density(draws.theta.col(0)));
  EXPECT_EQ(q.kind(), "prior");
}

TEST(ExactPosterior, ImportanceWeightIsConstant) {
  const ABTestModel m = ABTestModel::perturbed();
  RandomStream rng(2);
  for (int na : {0, 3, 10}) {
    const Design x{double(na)};
    const ExactPosterior q(m, x);
    const Vector theta = m.sample_prior(rng, 1).theta.col(0);
    const Vector y = m.sample_likelihood(theta, x, rng, 1).col(0);
    const auto draws = q.propose(y, rng, 200);
    std::vector<double> log_w(200);
    for (std::size_t j = 0; j < log_w.size(); ++j) {
      const Vector t = draws.theta.col(static_cast<Eigen::Index>(j));
      log_w[j] = m.prior_log_density(t) + m.log_likelihood(t, x, y) - draws.log_density[j];
      EXPECT_NEAR(draws.log_density[j], q.log_density(t, y), 1e-10);
    }
    const auto [lo, hi] = std::minmax_element(log_w.begin(), log_w.end());
    // relative spread of the weights themselves
    EXPECT_LT(std::expm1(*hi - *lo), 1e-8) << "n_A = " << na;
  }
}

TEST(ExactPosterior, ConjugateFormulas) {
  const ABTestModel m = ABTestModel::perturbed();
  const ExactPosterior q(m, {4.0});
  EXPECT_NEAR(q.covariance()(0, 0), 1.0 / (1.0 / 100.0 + 4.0), 1e-14);
  EXPECT_NEAR(q.covariance()(1, 1), 1.0 / (1.0 / (1.82 * 1.82) + 6.0), 1e-14);
  EXPECT_NEAR(q.covariance()(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(q.offset()[0], q.covariance()(0, 0) * 4.46 / 100.0, 1e-14);
}

TEST(AffineGaussian, PriorDegeneracyMatchesPriorProposal) {
  const ABTestModel ab = ABTestModel::perturbed();
  const PreferenceModel pref = PreferenceModel::perturbed();
  RandomStream rng(3);
  for (const ExperimentModel* m : {static_cast<const ExperimentModel*>(&ab), static_cast<const ExperimentModel*>(&pref)}) {
    const Design x = m->design_grid()[3];
    const auto affine = AffineGaussianProposal::from_prior(*m, x);
    const PriorProposal prior(*m);
    const Vector theta = m->sample_prior(rng, 1).theta.col(0);
    const Vector y = m->sample_likelihood(theta, x, rng, 1).col(0);
    for (int k = 0; k < 20; ++k) {
      const Vector t = m->sample_prior(rng, 1).theta.col(0);
      EXPECT_NEAR(affine.log_density(t, y), prior.log_density(t, y), 1e-12);
    }
    RandomStream a(9);
    RandomStream b(9);
    const auto da = affine.propose(y, a, 50);
    const auto db = prior.propose(y, b, 50);
    EXPECT_LT((da.theta - db.theta).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(AffineGaussian, JsonRoundTrip) {
  Matrix gain(2, 3);
  gain << 0.1, -0.2, 0.3, 1e-17, 5.5, -6.25;
  const AffineGaussianProposal q(gain, Vector::Constant(2, 0.75), Vector::Constant(2, -1.5), OutcomeFeature::kLogit);
  const auto back = AffineGaussianProposal::from_json(nlohmann::json::parse(q.to_json().dump()));
  EXPECT_EQ(back.gain(), q.gain());
  EXPECT_EQ(back.offset(), q.offset());
  EXPECT_EQ(back.log_sigma(), q.log_sigma());
  EXPECT_EQ(back.feature(), OutcomeFeature::kLogit);
  EXPECT_THROW(AffineGaussianProposal::from_json({{"b", {1.0}}}), std::invalid_argument);
  EXPECT_THROW(AffineGaussianProposal(Matrix::Zero(2, 1), Vector::Zero(3), Vector::Zero(3)), std::invalid_argument);
}

TEST(AffineTraining, RecoversTheExactPosterior) {
  const ABTestModel m = ABTestModel::perturbed();
  for (int na : {2, 5, 9}) {
    const Design x{double(na)};
    EstimatorConfig cfg;
    cfg.seed = 21;
    const auto trained = train_affine_proposal(m, x, cfg);
    const ExactPosterior exact(m, x);
    const auto& q = trained.proposal;
    const Vector sd = exact.covariance().diagonal().cwiseSqrt();
    EXPECT_LE((q.gain() - exact.gain()).norm(), 0.05 * exact.gain().norm()) << "n_A = " << na;
    for (Eigen::Index k = 0; k < 2; ++k) {
      EXPECT_NEAR(std::exp(q.log_sigma()[k]), sd[k], 0.05 * sd[k]) << "n_A = " << na;
      EXPECT_NEAR(q.offset()[k], exact.offset()[k], 0.05 * sd[k]) << "n_A = " << na;
    }
    EXPECT_LE(trained.held_out_bound[static_cast<std::size_t>(trained.best_epoch)], trained.held_out_bound.front());
    EXPECT_EQ(trained.held_out_bound.size(), 201u);
  }
}

TEST(AffineTraining, NarrowsTheVnmcAceGap) {
  const ABTestModel m = ABTestModel::perturbed();
  const Design x{6.0};
  EstimatorConfig cfg;
  cfg.seed = 5;
  const auto trained = train_affine_proposal(m, x, cfg);
  const PriorProposal prior(m);
  double gap_prior = 0.0;
  double gap_trained = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    cfg.seed = 100 + s;
    gap_prior += vnmc_eig(m, x, prior, cfg).value - ace_eig(m, x, prior, cfg).value;
    gap_trained += vnmc_eig(m, x, trained.proposal, cfg).value - ace_eig(m, x, trained.proposal, cfg).value;
  }
  EXPECT_GT(gap_prior, 0.0);
  EXPECT_LT(gap_trained, gap_prior);
}

TEST(AffineTraining, WorksOnNonGaussianModels) {
  const PreferenceModel pref;
  EstimatorConfig cfg;
  cfg.seed = 8;
  ProposalTrainingOptions options;
  options.epochs = 20;
  const auto t = train_affine_proposal(pref, {10.0}, cfg, options);
  EXPECT_LE(t.held_out_bound[static_cast<std::size_t>(t.best_epoch)], t.held_out_bound.front());
  EXPECT_EQ(t.proposal.feature(), OutcomeFeature::kLogit);

  const PKModel pk;
  const auto tp = train_affine_proposal(pk, {2.0}, cfg, options);
  EXPECT_LE(tp.held_out_bound[static_cast<std::size_t>(tp.best_epoch)], tp.held_out_bound.front());
}

TEST(AffineTraining, RejectsBadOptions) {
  const ABTestModel m;
  ProposalTrainingOptions options;
  options.epochs = 0;
  EXPECT_THROW(train_affine_proposal(m, {1.0}, EstimatorConfig{}, options), std::invalid_argument);
}

}  // namespace
}  // namespace reig
