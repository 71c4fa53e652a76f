#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "reig/core/errors.hpp"
#include "reig/core/numeric.hpp"
#include "reig/estimators/nested.hpp"
#include "reig/models/ab_test.hpp"
#include "reig/models/diagnostic.hpp"
#include "reig/models/independent.hpp"
#include "reig/models/pharmacokinetic.hpp"
#include "reig/models/preference.hpp"
#include "reig/oracle/discrete.hpp"
#include "reig/oracle/gaussian.hpp"

namespace reig {
namespace {

EstimatorConfig budget(std::size_t n1, std::size_t n2, std::size_t m, std::uint64_t seed) {
  EstimatorConfig cfg;
  cfg.n1 = n1;
  cfg.n2 = n2;
  cfg.m = m;
  cfg.seed = seed;
  return cfg;
}

// Scalar model whose log-likelihood is a fixed value, for exercising the
// clipping and failure paths.
class FixedLikelihoodModel final : public ExperimentModel {
 public:
  explicit FixedLikelihoodModel(double log_lik) : log_lik_(log_lik) {}
  std::string name() const override { return "fixed"; }
  Eigen::Index theta_dim() const override { return 1; }
  Eigen::Index outcome_dim(const Design&) const override { return 1; }
  std::vector<Design> design_grid() const override { return {{0.0}}; }
  ParamSamples sample_prior(RandomStream& rng, std::size_t n) const override {
    ParamSamples s{Matrix(1, static_cast<Eigen::Index>(n)), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
      s.theta(0, static_cast<Eigen::Index>(i)) = rng.normal();
      s.log_density[i] = prior_log_density(s.theta.col(static_cast<Eigen::Index>(i)));
    }
    return s;
  }
  double prior_log_density(const Vector& theta) const override { return normal_log_pdf(theta[0], 0.0, 1.0); }
  Matrix sample_likelihood(const Vector&, const Design&, RandomStream&, std::size_t n) const override {
    return Matrix::Zero(1, static_cast<Eigen::Index>(n));
  }
  double log_likelihood(const Vector& theta, const Design&, const Vector&) const override {
    return theta[0] > 0.0 ? log_lik_ : log_lik_ - 1.0;
  }
  Vector prior_location() const override { return Vector::Zero(1); }
  Vector prior_scale() const override { return Vector::Ones(1); }
  nlohmann::json to_json() const override { return {{"name", name()}}; }

 private:
  double log_lik_;
};

TEST(Config, Validation) {
  EXPECT_THROW(validate(budget(0, 1, 1, 0)), std::invalid_argument);
  EXPECT_THROW(validate(budget(1, 0, 1, 0)), std::invalid_argument);
  EXPECT_THROW(validate(budget(1, 1, 0, 0)), std::invalid_argument);
  EXPECT_NO_THROW(validate(budget(1, 1, 1, 0)));
  EXPECT_EQ(budget(100, 10, 30, 0).total_outer(), 1000u);
}

TEST(KlPerTheta, IndependentToyIsExactlyZero) {
  const IndependentToyModel m;
  const PriorProposal q(m);
  RandomStream rng(1);
  Vector theta(1);
  theta << 0.4;
  EXPECT_EQ(kl_per_theta(m, theta, {0.0}, q, budget(1, 20, 5, 0), InnerScheme::kNested, rng), 0.0);
  EXPECT_EQ(kl_per_theta(m, theta, {0.0}, q, budget(1, 20, 5, 0), InnerScheme::kContrastive, rng), 0.0);
  EXPECT_EQ(nmc_eig(m, {1.0}, budget(50, 4, 10, 3)).value, 0.0);
  EXPECT_EQ(ace_eig(m, {1.0}, q, budget(50, 4, 10, 3)).value, 0.0);
}

TEST(KlPerTheta, ExactPosteriorMatchesPerThetaGaussianKl) {
  const ABTestModel m = ABTestModel::perturbed();
  const Design x{3.0};
  const ExactPosterior q(m, x);
  const Matrix X = m.design_matrix(3);
  const Vector marginal_mean = X * m.prior_location();
  const Matrix marginal_cov = Matrix::Identity(10, 10) + X * m.prior_cov() * X.transpose();
  RandomStream rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector theta = m.sample_prior(rng, 1).theta.col(0);
    std::vector<double> terms;
    const double d = kl_per_theta(m, theta, x, q, budget(1, 4000, 2, 0), InnerScheme::kNested, rng, nullptr, &terms);
    const double exact = gaussian_kl(X * theta, Matrix::Identity(10, 10), marginal_mean, marginal_cov);
    const double se = std::sqrt(sample_variance(terms) / terms.size());
    EXPECT_NEAR(d, exact, 4.0 * se) << "trial " << trial;
  }
}

TEST(KlPerTheta, DiagnosticEnumerationIsExact) {
  const DiagnosticTestModel m(0.37);
  for (const auto test : {DiagnosticTest::kA, DiagnosticTest::kB}) {
    const Design x = DiagnosticTestModel::design_of(test);
    const auto d = discrete_divergences(m, test, 0.37);
    Vector healthy(1);
    healthy << 0.0;
    Vector sick(1);
    sick << 1.0;
    EXPECT_NEAR(kl_per_theta_exact(m, healthy, x), d[0], 1e-15);
    EXPECT_NEAR(kl_per_theta_exact(m, sick, x), d[1], 1e-15);
  }
  EXPECT_THROW(exact_divergences(ABTestModel(), {1.0}), std::invalid_argument);
}

TEST(Estimators, DiagnosticEnumerationMatchesOracle) {
  for (double r : {0.05, 0.5, 0.81}) {
    const DiagnosticTestModel m(r);
    EstimatorConfig cfg = budget(10, 10, 10, 1);
    cfg.enumerate = true;
    const PriorProposal q(m);
    for (const auto test : {DiagnosticTest::kA, DiagnosticTest::kB}) {
      const Design x = DiagnosticTestModel::design_of(test);
      const double oracle = discrete_eig_exact(m, test, r);
      EXPECT_NEAR(nmc_eig(m, x, cfg).value, oracle, 1e-12);
      EXPECT_NEAR(vnmc_eig(m, x, q, cfg).value, oracle, 1e-12);
      EXPECT_NEAR(ace_eig(m, x, q, cfg).value, oracle, 1e-12);
      EXPECT_EQ(nmc_eig(m, x, cfg).standard_error, 0.0);
    }
  }
}

TEST(Estimators, DiagnosticSamplingConvergesToOracle) {
  const DiagnosticTestModel m(0.5);
  const Design x = DiagnosticTestModel::design_of(DiagnosticTest::kB);
  const auto e = nmc_eig(m, x, budget(4000, 5, 200, 4));
  EXPECT_NEAR(e.value, discrete_eig_exact(m, DiagnosticTest::kB, 0.5), 3.0 * e.standard_error + 2e-3);
  EXPECT_NEAR(e.value, 0.2156, 0.02);
}

TEST(Estimators, NmcMatchesLinearGaussianOracle) {
  const ABTestModel m;
  const auto e = nmc_eig(m, {10.0}, budget(400, 5, 4000, 5));
  const double oracle = linear_gaussian_eig(m.prior_cov(), m.design_matrix(10));
  EXPECT_NEAR(oracle, 3.4544, 1e-4);
  EXPECT_NEAR(e.value, oracle, 2.576 * e.standard_error + 0.02);
}

TEST(Estimators, ExactPosteriorVnmcAndAceHitTheOracle) {
  const ABTestModel m = ABTestModel::perturbed();
  for (int na : {1, 7}) {
    const Design x{double(na)};
    const ExactPosterior q(m, x);
    const double oracle = linear_gaussian_eig(m.prior_cov(), m.design_matrix(na));
    const auto v = vnmc_eig(m, x, q, budget(100, 10, 30, 6));
    const auto a = ace_eig(m, x, q, budget(100, 10, 30, 6));
    EXPECT_NEAR(v.value, oracle, 2.576 * v.standard_error);
    EXPECT_LE(a.value, oracle + 2.576 * a.standard_error);
    // zero-variance inner estimate: both schemes agree
    EXPECT_NEAR(v.value, a.value, 1e-9);
  }
}

TEST(Estimators, InnerBudgetSweepApproachesOracleFromAbove) {
  const ABTestModel m = ABTestModel::perturbed();
  const Design x{5.0};
  const PriorProposal q(m);
  const double oracle = linear_gaussian_eig(m.prior_cov(), m.design_matrix(5));
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t inner : {30, 100, 1000}) {
    double total = 0.0;
    for (std::uint64_t s = 0; s < 4; ++s) total += vnmc_eig(m, x, q, budget(100, 10, inner, 40 + s)).value;
    const double avg = total / 4.0;
    EXPECT_LT(avg, previous) << "M = " << inner;
    EXPECT_GT(avg, oracle - 0.1);
    previous = avg;
  }
}

TEST(Estimators, VnmcAboveAceOnEveryBenchmark) {
  const ABTestModel ab = ABTestModel::perturbed();
  const PreferenceModel pref;
  const PKModel pk;
  for (const ExperimentModel* m :
       {static_cast<const ExperimentModel*>(&ab), static_cast<const ExperimentModel*>(&pref),
        static_cast<const ExperimentModel*>(&pk)}) {
    const PriorProposal q(*m);
    for (const Design& x : {m->design_grid()[2], m->design_grid()[m->design_grid().size() / 2]}) {
      double v = 0.0;
      double a = 0.0;
      for (std::uint64_t s = 0; s < 3; ++s) {
        v += vnmc_eig(*m, x, q, budget(50, 4, 30, 60 + s)).value;
        a += ace_eig(*m, x, q, budget(50, 4, 30, 60 + s)).value;
      }
      EXPECT_GE(v, a) << m->name() << " design " << m->design_label(x);
    }
  }
}

TEST(Estimators, ResultsDoNotDependOnWorkerCount) {
  const PKModel m;
  const PriorProposal q(m);
  EstimatorConfig one = budget(40, 3, 20, 9);
  EstimatorConfig many = one;
  many.workers = 8;
  const auto a = sample_divergences(m, {1.5}, q, one, InnerScheme::kContrastive);
  const auto b = sample_divergences(m, {1.5}, q, many, InnerScheme::kContrastive);
  EXPECT_EQ(a.d, b.d);
  EXPECT_EQ(a.joint, b.joint);
  EXPECT_EQ(a.joint.size(), 120u);
}

TEST(Estimators, JointLogRatiosAverageToD) {
  const ABTestModel m;
  const PriorProposal q(m);
  const auto s = sample_divergences(m, {4.0}, q, budget(20, 5, 10, 2), InnerScheme::kNested);
  ASSERT_EQ(s.d.size(), 20u);
  for (std::size_t i = 0; i < 20; ++i) {
    double total = 0.0;
    for (std::size_t k = 0; k < 5; ++k) total += s.joint[i * 5 + k];
    EXPECT_NEAR(total / 5.0, s.d[i], 1e-12);
  }
}

TEST(Estimators, ClippingIsCountedAndReported) {
  const FixedLikelihoodModel m(-1e9);
  const PriorProposal q(m);
  const auto s = sample_divergences(m, {0.0}, q, budget(10, 3, 5, 1), InnerScheme::kNested);
  EXPECT_EQ(s.clip_count, 30u);
  for (double d : s.d) EXPECT_TRUE(std::isfinite(d));
}

TEST(Estimators, NonFiniteInnerEstimateFails) {
  const FixedLikelihoodModel m(std::numeric_limits<double>::quiet_NaN());
  const PriorProposal q(m);
  EXPECT_THROW(nmc_eig(m, {0.0}, budget(4, 2, 3, 1)), EstimatorFailure);
}

}  // namespace
}  // namespace reig
