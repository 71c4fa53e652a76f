#include "reig/models/factory.hpp"

#include <stdexcept>

namespace reig {
namespace {

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <int N>
void read_vector(const nlohmann::json& j, const char* key, Eigen::Matrix<double, N, 1>& out) {
  if (!j.contains(key)) return;
  const auto values = j.at(key).get<std::vector<double>>();
  if (values.size() != static_cast<std::size_t>(N)) {
    throw std::invalid_argument(std::string("model config: field '") + key + "' has wrong length");
  }
  for (int k = 0; k < N; ++k) out[k] = values[static_cast<std::size_t>(k)];
}

bool perturbed_preset(const nlohmann::json& j) {
  const std::string preset = j.value("preset", "reference");
  if (preset == "reference") return false;
  if (preset == "perturbed") return true;
  throw std::invalid_argument("model config: unknown preset '" + preset + "'");
}

TestRates read_rates(const nlohmann::json& j, const char* key, TestRates rates) {
  if (!j.contains(key)) return rates;
  const auto& r = j.at(key);
  read_if(r, "false_negative", rates.false_negative);
  read_if(r, "false_positive", rates.false_positive);
  return rates;
}

}  // namespace

std::vector<std::string> model_names() { return {"diagnostic", "ab", "preference", "pk", "independent"}; }

std::unique_ptr<ExperimentModel> make_model(const nlohmann::json& config) {
  try {
    const std::string name = config.at("name").get<std::string>();
    const bool perturbed = perturbed_preset(config);
    if (name == "diagnostic") {
      const DiagnosticTestModel defaults;
      double prior = defaults.prior_prob();
      read_if(config, "prior_prob", prior);
      return std::make_unique<DiagnosticTestModel>(prior, read_rates(config, "test_a", defaults.rates(DiagnosticTest::kA)),
                                                   read_rates(config, "test_b", defaults.rates(DiagnosticTest::kB)));
    }
    if (name == "ab") {
      auto p = (perturbed ? ABTestModel::perturbed() : ABTestModel()).params();
      read_if(config, "n", p.n);
      read_vector(config, "prior_mean", p.prior_mean);
      read_vector(config, "prior_sd", p.prior_sd);
      return std::make_unique<ABTestModel>(p);
    }
    if (name == "preference") {
      auto p = (perturbed ? PreferenceModel::perturbed() : PreferenceModel()).params();
      read_if(config, "prior_mean", p.prior_mean);
      read_if(config, "prior_sd", p.prior_sd);
      read_if(config, "censor_threshold", p.censor_threshold);
      return std::make_unique<PreferenceModel>(p);
    }
    if (name == "pk") {
      auto p = (perturbed ? PKModel::perturbed() : PKModel()).params();
      read_vector(config, "prior_location", p.prior_location);
      read_vector(config, "prior_variance", p.prior_variance);
      read_if(config, "dose", p.dose);
      read_if(config, "multiplicative_noise_variance", p.multiplicative_noise_variance);
      read_if(config, "additive_noise_variance", p.additive_noise_variance);
      return std::make_unique<PKModel>(p);
    }
    if (name == "independent") return std::make_unique<IndependentToyModel>();
    throw std::invalid_argument("model config: unknown model '" + name + "'");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model config: ") + e.what());
  }
}

}  // namespace reig
