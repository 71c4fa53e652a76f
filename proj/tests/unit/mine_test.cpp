#include <gtest/gtest.h>

#include <cmath>

#include "reig/core/errors.hpp"
#include "reig/estimators/mine.hpp"
#include "reig/models/ab_test.hpp"
#include "reig/models/independent.hpp"
#include "reig/oracle/gaussian.hpp"

namespace reig {
namespace {

EstimatorConfig budget(std::size_t n1, std::size_t n2, std::uint64_t seed) {
  EstimatorConfig cfg;
  cfg.n1 = n1;
  cfg.n2 = n2;
  cfg.seed = seed;
  return cfg;
}

TEST(Mine, ConstantScorers) {
  const ABTestModel m;
  const Eigen::Index dim = m.theta_dim() + m.outcome_dim({3.0});
  EXPECT_EQ(mine_eig(m, {3.0}, ScorerNetwork(dim), budget(50, 4, 1)).value, -std::exp(-1.0));
  EXPECT_EQ(mine_eig(m, {3.0}, ScorerNetwork::constant(dim, 1.0), budget(50, 4, 1)).value, 0.0);
  EXPECT_THROW(mine_eig(m, {3.0}, ScorerNetwork(dim), budget(1, 4, 1)), std::invalid_argument);
}

TEST(Mine, ShuffleNeverKeepsTheGeneratingParameter) {
  const ABTestModel m;
  const JointSamples joint = sample_joint(m, {4.0}, 6, 3, RandomStream(2));
  const Matrix shuffled = shuffle_outcomes(joint);
  ASSERT_EQ(shuffled.cols(), 18);
  for (Eigen::Index c = 0; c < 18; ++c) {
    const Eigen::Index source = (c + 3) % 18;
    EXPECT_EQ(shuffled.col(c), joint.y.col(source));
    EXPECT_NE(source / 3, c / 3);
  }
}

TEST(Mine, ObjectiveGradientMatchesFiniteDifferences) {
  const ABTestModel m;
  RandomStream rng(3);
  const JointSamples joint = sample_joint(m, {4.0}, 8, 4, RandomStream(4));
  const Matrix in_joint = scorer_inputs(m, joint.theta, joint.y);
  const Matrix in_marg = scorer_inputs(m, joint.theta, shuffle_outcomes(joint));
  ScorerNetwork net = ScorerNetwork::random(in_joint.rows(), rng);
  net.set_standardization(in_joint.rowwise().mean(), Vector::Constant(in_joint.rows(), 3.0));
  const Vector grad = mine_objective_gradient(net, in_joint, in_marg);
  const Vector params = net.parameters();
  ASSERT_EQ(grad.size(), net.parameter_count());
  for (int trial = 0; trial < 10; ++trial) {
    const auto k = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(params.size()));
    const double h = 1e-5;
    ScorerNetwork probe = net;
    Vector p = params;
    p[k] += h;
    probe.set_parameters(p);
    const double up = mine_objective(probe, in_joint, in_marg);
    p[k] -= 2.0 * h;
    probe.set_parameters(p);
    const double down = mine_objective(probe, in_joint, in_marg);
    const double fd = (up - down) / (2.0 * h);
    EXPECT_LE(std::abs(fd - grad[k]), 1e-4 * std::max(std::abs(grad[k]), 1e-3)) << "parameter " << k;
  }
}

TEST(Scorer, JsonRoundTripAndEvaluation) {
  RandomStream rng(5);
  ScorerNetwork net = ScorerNetwork::random(3, rng);
  net.set_standardization(Vector::Constant(3, 0.5), Vector::Constant(3, 2.0));
  const ScorerNetwork back = ScorerNetwork::from_json(nlohmann::json::parse(net.to_json().dump()));
  const Matrix inputs = Matrix::Random(3, 7);
  EXPECT_EQ(back.evaluate(inputs), net.evaluate(inputs));
  EXPECT_EQ(net.parameter_count(), 64 * 3 + 64 + 64 * 64 + 64 + 64 + 1);
  EXPECT_NEAR(net(inputs.col(2)), net.evaluate(inputs)[2], 1e-14);
  EXPECT_TRUE(net.all_finite());
}

TEST(Mine, IndependentToyTrainsToNearZero) {
  const IndependentToyModel m;
  const auto trained = train_scorer(m, {0.0}, budget(100, 10, 6));
  EXPECT_GE(trained.held_out_objective[static_cast<std::size_t>(trained.best_epoch)],
            trained.held_out_objective.front());
  const auto e = mine_eig(m, {0.0}, trained.net, budget(100, 10, 77));
  EXPECT_LE(e.value, 0.05);
}

TEST(Mine, TrainedEstimateStaysBelowTheOracle) {
  const ABTestModel m;
  const auto trained = train_scorer(m, {5.0}, budget(100, 10, 7));
  const auto e = mine_eig(m, {5.0}, trained.net, budget(100, 10, 78));
  const double oracle = linear_gaussian_eig(m.prior_cov(), m.design_matrix(5));
  EXPECT_LE(e.value, oracle + 2.576 * e.standard_error);
  EXPECT_GT(e.value, 0.5 * oracle);  // it learned something
}

TEST(Mine, TrainingRejectsBadOptions) {
  const IndependentToyModel m;
  ScorerTrainingOptions options;
  options.epochs = 0;
  EXPECT_THROW(train_scorer(m, {0.0}, budget(10, 2, 1), options), std::invalid_argument);
}

}  // namespace
}  // namespace reig
