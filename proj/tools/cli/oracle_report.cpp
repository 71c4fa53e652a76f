#include "oracle_report.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <functional>

#include "config.hpp"
#include "reig/core/numeric.hpp"
#include "reig/estimators/nested.hpp"
#include "reig/models/factory.hpp"
#include "reig/oracle/discrete.hpp"
#include "reig/oracle/gaussian.hpp"
#include "reig/robust/reig.hpp"

namespace reig::cli {
namespace {

class Report {
 public:
  explicit Report(OracleReport& out) : out_(out) {
    out_.table.header = {"check", "model", "value", "reference", "tolerance", "status"};
  }

  // Passes when |value - reference| <= tolerance.
  void near(const std::string& check, const std::string& model, double value, double reference, double tolerance) {
    record(check, model, value, reference, tolerance, std::abs(value - reference) <= tolerance);
  }
  // Passes when value <= bound.
  void at_most(const std::string& check, const std::string& model, double value, double bound) {
    record(check, model, value, bound, 0.0, value <= bound);
  }

 private:
  void record(const std::string& check, const std::string& model, double value, double reference, double tolerance,
              bool ok) {
    if (!ok) ++out_.failed;
    out_.table.add({check, model, format_real(value), format_real(reference), format_real(tolerance),
                    ok ? "pass" : "FAIL"});
  }

  OracleReport& out_;
};

double entropy_form_eig(const DiagnosticTestModel& model, DiagnosticTest test, double r) {
  const auto lik = diagnostic_likelihood_table(model, test);
  const double positive = (1.0 - r) * lik[0][1] + r * lik[1][1];
  return binary_entropy(positive) - (1.0 - r) * binary_entropy(lik[0][1]) - r * binary_entropy(lik[1][1]);
}

void diagnostic_checks(Report& rep, double dual_tolerance) {
  const DiagnosticTestModel model;
  for (const auto test : {DiagnosticTest::kA, DiagnosticTest::kB}) {
    const std::string name = test == DiagnosticTest::kA ? "A" : "B";
    const double exact = discrete_eig_exact(model, test, 0.5);
    rep.near("eig_entropy_form_" + name, "diagnostic", exact, entropy_form_eig(model, test, 0.5), 1e-12);
    rep.near("eig_equality_point_" + name, "diagnostic", exact, 0.22, 5e-3);
    EstimatorConfig cfg;
    cfg.enumerate = true;
    const auto enumerated = nmc_eig(model, DiagnosticTestModel::design_of(test), cfg);
    rep.near("enumeration_vs_closed_form_" + name, "diagnostic", enumerated.value, exact, 1e-12);
  }

  // single sign change of EIG_A - EIG_B
  int flips = 0;
  double crossing = 0.0;
  double previous = 0.0;
  for (int k = 1; k < 100000; ++k) {
    const double r = k / 100000.0;
    const double diff = discrete_eig_exact(model, DiagnosticTest::kA, r) - discrete_eig_exact(model, DiagnosticTest::kB, r);
    const double s = diff > 0 ? 1.0 : (diff < 0 ? -1.0 : 0.0);
    if (s != 0.0 && previous != 0.0 && s != previous) {
      ++flips;
      crossing = r;
    }
    if (s != 0.0) previous = s;
  }
  rep.near("eig_sign_flips", "diagnostic", flips, 1, 0.0);
  rep.near("eig_crossing_location", "diagnostic", crossing, 0.5, 1e-3);

  const auto grid = BernoulliPriorGrid::uniform();
  RandomStream rng(20240601);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double rp = 0.02 + 0.96 * rng.uniform();
    const double eps = 0.5 * rng.uniform();
    const auto test = trial % 2 ? DiagnosticTest::kA : DiagnosticTest::kB;
    worst = std::max(worst, std::abs(discrete_reig_dual(model, test, rp, eps).robust_value -
                                     discrete_reig_grid(model, test, rp, eps, grid).value));
  }
  rep.near("dual_vs_grid", "diagnostic", worst, 0.0, dual_tolerance);

  for (double eps : {0.01, 0.05, 0.2}) {
    const double eig = discrete_eig_exact(model, DiagnosticTest::kB, 0.3);
    const double robust = discrete_reig_grid(model, DiagnosticTest::kB, 0.3, eps, grid).value;
    const double truth = discrete_true_reig_grid(model, DiagnosticTest::kB, 0.3, eps, grid).value;
    const double violation = std::max({robust - eig, truth - robust, (robust - truth) - eps});
    rep.at_most(fmt::format("sandwich_eps_{}", eps), "diagnostic", violation, 0.0);
  }

  double slope_ratio = 0.0;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    auto gap = [&](double r) {
      return discrete_eig_exact(model, DiagnosticTest::kB, r) - discrete_iaff_exact(model, DiagnosticTest::kB, r, 0.3);
    };
    slope_ratio = std::max(slope_ratio, std::abs(gap(0.3 + h) - gap(0.3 - h)) / (2.0 * h) / (10.0 * h));
  }
  rep.at_most("tangency_slope_over_10h", "diagnostic", slope_ratio, 1.0);
}

void ab_checks(Report& rep) {
  for (const ABTestModel& model : {ABTestModel(), ABTestModel::perturbed()}) {
    double worst_det = 0.0;
    double worst_z = 0.0;
    for (const Design& d : model.design_grid()) {
      const Matrix x = model.design_matrix(model.group_a_size(d));
      const Matrix s = Matrix::Identity(x.rows(), x.rows()) + x * model.prior_cov() * x.transpose();
      const double oracle = linear_gaussian_eig(model.prior_cov(), x);
      worst_det = std::max(worst_det, std::abs(oracle - 0.5 * std::log(s.determinant())));
      EstimatorConfig cfg;
      cfg.n1 = 100;
      cfg.n2 = 10;
      cfg.m = 10;
      cfg.seed = 17;
      const ExactPosterior q(model, d);
      const auto e = vnmc_eig(model, d, q, cfg);
      worst_z = std::max(worst_z, std::abs(e.value - oracle) / e.standard_error);
    }
    const std::string tag = model.prior_location()[0] == 0.0 ? "ab" : "ab_perturbed";
    rep.near("log_det_identity", tag, worst_det, 0.0, 1e-10);
    rep.at_most("exact_posterior_vnmc_z", tag, worst_z, 2.576);
  }
  const ABTestModel p;
  rep.near("perturbation_kl", "ab",
           gaussian_kl(ABTestModel::perturbed().prior_location(), p.prior_location(), p.prior_scale().array().square()),
           0.09945, 1e-5);
}

void preference_checks(Report& rep) {
  const PreferenceModel p;
  const PreferenceModel q = PreferenceModel::perturbed();
  const double kl = gaussian_kl(q.prior_location(), p.prior_location(), p.prior_scale().array().square());
  const double shift = q.prior_location()[0] - p.prior_location()[0];
  rep.near("perturbation_kl", "preference", kl, shift * shift / (2.0 * p.prior_scale()[0] * p.prior_scale()[0]), 1e-15);
  EstimatorConfig cfg;
  cfg.n1 = 50;
  cfg.n2 = 2;
  cfg.m = 20;
  const auto e = nmc_eig(p, Design{4.8}, cfg);
  rep.near("zero_radius_is_mean", "preference", apply_robust(e.samples, RobustMode::kReig, AmbiguityRadius(0.0)).value,
           e.value, 0.0);
  rep.at_most("robust_below_mean", "preference",
              apply_robust(e.samples, RobustMode::kReig, AmbiguityRadius(kl)).value - e.value, 0.0);
}

void pk_checks(Report& rep) {
  const PKModel p;
  rep.near("perturbation_kl", "pk",
           gaussian_kl(PKModel::perturbed().prior_location(), p.prior_location(), p.params().prior_variance), 0.1,
           1e-12);
}

void independent_checks(Report& rep) {
  const IndependentToyModel m;
  EstimatorConfig cfg;
  cfg.n1 = 50;
  cfg.n2 = 4;
  cfg.m = 10;
  rep.near("uninformative_nmc", "independent", nmc_eig(m, Design{0.0}, cfg).value, 0.0, 0.0);
}

}  // namespace

OracleReport oracle_report(const OracleReportOptions& options) {
  if (options.models.empty()) throw ConfigError("oracle-report: empty model list");
  const std::vector<std::pair<std::string, std::function<void(Report&)>>> suites{
      {"diagnostic", [&](Report& r) { diagnostic_checks(r, options.dual_tolerance); }},
      {"ab", ab_checks},
      {"preference", preference_checks},
      {"pk", pk_checks},
      {"independent", independent_checks},
  };
  for (const auto& name : options.models) {
    if (std::none_of(suites.begin(), suites.end(), [&](const auto& s) { return s.first == name; })) {
      throw ConfigError("oracle-report: unknown model '" + name + "'");
    }
  }
  OracleReport out;
  Report rep(out);
  for (const auto& [name, run] : suites) {
    if (std::find(options.models.begin(), options.models.end(), name) != options.models.end()) run(rep);
  }
  return out;
}

}  // namespace reig::cli
