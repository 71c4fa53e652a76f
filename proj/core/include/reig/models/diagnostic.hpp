#pragma once

#include <array>

#include "reig/models/model.hpp"

namespace reig {

enum class DiagnosticTest { kA = 0, kB = 1 };

struct TestRates {
  double false_negative = 0.0;
  double false_positive = 0.0;
};

/// P(y | theta) indexed [theta][y]; theta 0 = healthy, 1 = has the condition;
/// y 0 = negative result, 1 = positive result.
using LikelihoodTable = std::array<std::array<double, 2>, 2>;

/// Two blood tests for a binary condition. Test A almost never misses the
/// condition but flags half the healthy patients; test B errs symmetrically.
class DiagnosticTestModel final : public ExperimentModel {
 public:
  DiagnosticTestModel(double prior_prob = 0.5, TestRates test_a = {1e-16, 0.5},
                      TestRates test_b = {0.184, 0.184});

  double prior_prob() const { return prior_prob_; }
  const TestRates& rates(DiagnosticTest test) const { return test == DiagnosticTest::kA ? test_a_ : test_b_; }
  DiagnosticTestModel with_prior(double prior_prob) const;

  static DiagnosticTest test_of(const Design& design);
  static Design design_of(DiagnosticTest test) { return {static_cast<double>(test)}; }

  std::string name() const override { return "diagnostic"; }
  Eigen::Index theta_dim() const override { return 1; }
  Eigen::Index outcome_dim(const Design&) const override { return 1; }
  std::vector<Design> design_grid() const override;
  std::string design_label(const Design& design) const override;

  ParamSamples sample_prior(RandomStream& rng, std::size_t n) const override;
  double prior_log_density(const Vector& theta) const override;
  Matrix sample_likelihood(const Vector& theta, const Design& design, RandomStream& rng,
                           std::size_t n) const override;
  double log_likelihood(const Vector& theta, const Design& design, const Vector& y) const override;
  Vector grad_log_joint(const Vector& theta, const Design& design, const Vector& y) const override;

  Vector prior_location() const override;
  Vector prior_scale() const override;

  std::optional<DiscreteEnumeration> enumerate(const Design& design) const override;
  nlohmann::json to_json() const override;

 private:
  double prior_prob_;
  TestRates test_a_;
  TestRates test_b_;
};

LikelihoodTable diagnostic_likelihood_table(const DiagnosticTestModel& model, DiagnosticTest test);

}  // namespace reig
