#include "reig/models/diagnostic.hpp"

#include <cmath>
#include <stdexcept>

namespace reig {
namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string("diagnostic model: ") + what + " outside [0,1]");
}

int binary_index(double v, const char* what) {
  if (v == 0.0) return 0;
  if (v == 1.0) return 1;
  throw std::invalid_argument(std::string("diagnostic model: ") + what + " must be 0 or 1");
}

}  // namespace

DiagnosticTestModel::DiagnosticTestModel(double prior_prob, TestRates test_a, TestRates test_b)
    : prior_prob_(prior_prob), test_a_(test_a), test_b_(test_b) {
  check_probability(prior_prob_, "prior_prob");
  for (const auto& r : {test_a_, test_b_}) {
    check_probability(r.false_negative, "false_negative");
    check_probability(r.false_positive, "false_positive");
  }
}

DiagnosticTestModel DiagnosticTestModel::with_prior(double prior_prob) const {
  return DiagnosticTestModel(prior_prob, test_a_, test_b_);
}

DiagnosticTest DiagnosticTestModel::test_of(const Design& design) {
  return binary_index(design.value, "design") == 0 ? DiagnosticTest::kA : DiagnosticTest::kB;
}

LikelihoodTable diagnostic_likelihood_table(const DiagnosticTestModel& model, DiagnosticTest test) {
  const TestRates& r = model.rates(test);
  LikelihoodTable t{};
  t[1][1] = 1.0 - r.false_negative;
  t[1][0] = r.false_negative;
  t[0][1] = r.false_positive;
  t[0][0] = 1.0 - r.false_positive;
  return t;
}

std::vector<Design> DiagnosticTestModel::design_grid() const {
  return {design_of(DiagnosticTest::kA), design_of(DiagnosticTest::kB)};
}

std::string DiagnosticTestModel::design_label(const Design& design) const {
  return test_of(design) == DiagnosticTest::kA ? "A" : "B";
}

ParamSamples DiagnosticTestModel::sample_prior(RandomStream& rng, std::size_t n) const {
  ParamSamples out{Matrix(1, static_cast<Eigen::Index>(n)), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double sick = rng.uniform() < prior_prob_ ? 1.0 : 0.0;
    out.theta(0, static_cast<Eigen::Index>(i)) = sick;
    out.log_density[i] = std::log(sick == 1.0 ? prior_prob_ : 1.0 - prior_prob_);
  }
  return out;
}

double DiagnosticTestModel::prior_log_density(const Vector& theta) const {
  return std::log(binary_index(theta[0], "theta") == 1 ? prior_prob_ : 1.0 - prior_prob_);
}

Matrix DiagnosticTestModel::sample_likelihood(const Vector& theta, const Design& design, RandomStream& rng,
                                              std::size_t n) const {
  const auto table = diagnostic_likelihood_table(*this, test_of(design));
  const double p_pos = table[binary_index(theta[0], "theta")][1];
  Matrix y(1, static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < y.cols(); ++i) y(0, i) = rng.uniform() < p_pos ? 1.0 : 0.0;
  return y;
}

double DiagnosticTestModel::log_likelihood(const Vector& theta, const Design& design, const Vector& y) const {
  const auto table = diagnostic_likelihood_table(*this, test_of(design));
  return std::log(table[binary_index(theta[0], "theta")][binary_index(y[0], "outcome")]);
}

Vector DiagnosticTestModel::grad_log_joint(const Vector&, const Design&, const Vector&) const {
  throw std::logic_error("diagnostic model: parameter space is discrete; no gradient");
}

Vector DiagnosticTestModel::prior_location() const { return Vector::Constant(1, prior_prob_); }

Vector DiagnosticTestModel::prior_scale() const {
  return Vector::Constant(1, std::sqrt(prior_prob_ * (1.0 - prior_prob_)));
}

std::optional<DiscreteEnumeration> DiagnosticTestModel::enumerate(const Design&) const {
  DiscreteEnumeration e;
  e.thetas = {Vector::Constant(1, 0.0), Vector::Constant(1, 1.0)};
  e.prior_probs = {1.0 - prior_prob_, prior_prob_};
  e.outcomes = {Vector::Constant(1, 0.0), Vector::Constant(1, 1.0)};
  return e;
}

nlohmann::json DiagnosticTestModel::to_json() const {
  return {{"name", name()},
          {"prior_prob", prior_prob_},
          {"test_a", {{"false_negative", test_a_.false_negative}, {"false_positive", test_a_.false_positive}}},
          {"test_b", {{"false_negative", test_b_.false_negative}, {"false_positive", test_b_.false_positive}}}};
}

}  // namespace reig
