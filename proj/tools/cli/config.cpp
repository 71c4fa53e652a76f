#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "reig/models/factory.hpp"

namespace reig::cli {
namespace {

template <class T>
T get_field(const nlohmann::json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

std::size_t get_count(const nlohmann::json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    throw ConfigError(std::string("config field '") + key + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

std::vector<double> number_or_list(const nlohmann::json& v, const char* key) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) return get_field<std::vector<double>>(nlohmann::json{{key, v}}, key);
  throw ConfigError(std::string("config field '") + key + "' must be a number or a list of numbers");
}

std::vector<std::uint64_t> seed_or_list(const nlohmann::json& v) {
  auto one = [](const nlohmann::json& s) {
    if (!s.is_number_unsigned()) throw ConfigError("seeds must be nonnegative integers");
    return s.get<std::uint64_t>();
  };
  if (!v.is_array()) return {one(v)};
  std::vector<std::uint64_t> out;
  for (const auto& s : v) out.push_back(one(s));
  return out;
}

ProposalSpec parse_proposal(const nlohmann::json& v) {
  ProposalSpec p;
  if (v.is_object()) {
    if (!v.contains("file") || !v["file"].is_string()) throw ConfigError("proposal object needs a 'file' string");
    p.kind = ProposalSpec::Kind::kFile;
    p.path = v["file"].get<std::string>();
    return p;
  }
  if (!v.is_string()) throw ConfigError("proposal must be \"prior\", \"trained\", \"exact\" or {\"file\": path}");
  const auto s = v.get<std::string>();
  if (s == "prior") p.kind = ProposalSpec::Kind::kPrior;
  else if (s == "trained") p.kind = ProposalSpec::Kind::kTrained;
  else if (s == "exact") p.kind = ProposalSpec::Kind::kExact;
  else throw ConfigError("unknown proposal '" + s + "'");
  return p;
}

void parse_training(const nlohmann::json& v, ProposalTrainingOptions& t) {
  for (const auto& [key, value] : v.items()) {
    if (key == "epochs") t.epochs = value.get<int>();
    else if (key == "batch_size") t.batch_size = value.get<std::size_t>();
    else if (key == "step_size") t.step_size = value.get<double>();
    else if (key == "inner_samples") t.inner_samples = value.get<std::size_t>();
    else if (key == "selection_tolerance") t.selection_tolerance = value.get<double>();
    else throw ConfigError("unknown training option '" + key + "'");
  }
}

void parse_scorer(const nlohmann::json& v, ScorerTrainingOptions& s) {
  for (const auto& [key, value] : v.items()) {
    if (key == "epochs") s.epochs = value.get<int>();
    else if (key == "batch_size") s.batch_size = value.get<std::size_t>();
    else if (key == "step_size") s.step_size = value.get<double>();
    else if (key == "momentum") s.momentum = value.get<double>();
    else throw ConfigError("unknown scorer option '" + key + "'");
  }
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'");
    }
    if (used != item.size()) throw ConfigError("not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("not a seed: '" + item + "'");
    }
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw ConfigError("seed out of range: '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty seed list");
  return out;
}

std::uint64_t default_seed_from_env() {
  const char* raw = std::getenv("REIG_LAB_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  const auto seeds = parse_seed_list(raw);
  if (seeds.size() != 1) throw ConfigError("REIG_LAB_SEED must hold a single seed");
  return seeds.front();
}

RunConfig parse_run_config(const nlohmann::json& doc, std::uint64_t default_seed) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"model",     "estimator", "robust_mode",    "epsilon",  "n1",
                                           "n2",        "m",         "seed",           "seeds",    "designs",
                                           "proposal",  "training",  "scorer",         "enumerate",
                                           "workers",   "out",       "record_runtime", "save_proposals"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config field '" + key + "'");
  }

  RunConfig cfg;
  try {
    if (doc.contains("model")) {
      const auto& m = doc["model"];
      if (m.is_string()) cfg.model = {{"name", m.get<std::string>()}};
      else if (m.is_object()) cfg.model = m;
      else throw ConfigError("model must be a name or an object");
    }
    if (doc.contains("estimator")) cfg.estimator = get_field<std::string>(doc, "estimator");
    if (doc.contains("robust_mode")) cfg.robust_mode = parse_robust_mode(get_field<std::string>(doc, "robust_mode"));
    if (doc.contains("epsilon")) cfg.epsilons = number_or_list(doc["epsilon"], "epsilon");
    if (doc.contains("n1")) cfg.n1 = get_count(doc, "n1");
    if (doc.contains("n2")) cfg.n2 = get_count(doc, "n2");
    if (doc.contains("m")) cfg.m = get_count(doc, "m");
    if (doc.contains("seed") && doc.contains("seeds")) throw ConfigError("give either 'seed' or 'seeds', not both");
    if (doc.contains("seed")) cfg.seeds = seed_or_list(doc["seed"]);
    if (doc.contains("seeds")) cfg.seeds = seed_or_list(doc["seeds"]);
    if (doc.contains("designs")) cfg.designs = number_or_list(doc["designs"], "designs");
    if (doc.contains("proposal")) cfg.proposal = parse_proposal(doc["proposal"]);
    if (doc.contains("training")) parse_training(doc["training"], cfg.training);
    if (doc.contains("scorer")) parse_scorer(doc["scorer"], cfg.scorer);
    if (doc.contains("enumerate")) cfg.enumerate = get_field<bool>(doc, "enumerate");
    if (doc.contains("record_runtime")) cfg.record_runtime = get_field<bool>(doc, "record_runtime");
    if (doc.contains("workers")) cfg.workers = static_cast<unsigned>(get_count(doc, "workers"));
    if (doc.contains("out")) cfg.out = get_field<std::string>(doc, "out");
    if (doc.contains("save_proposals")) cfg.save_proposals = get_field<std::string>(doc, "save_proposals");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.seeds.empty()) cfg.seeds = {default_seed};
  return cfg;
}

RunConfig load_run_config(const std::string& path, std::uint64_t default_seed) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(doc, default_seed);
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
  if (o.epsilon) cfg.epsilons = parse_double_list(*o.epsilon);
  if (o.n1) cfg.n1 = *o.n1;
  if (o.n2) cfg.n2 = *o.n2;
  if (o.m) cfg.m = *o.m;
  if (o.seed) cfg.seeds = parse_seed_list(*o.seed);
  if (o.model) cfg.model = {{"name", *o.model}};
  if (o.estimator) cfg.estimator = *o.estimator;
  if (o.robust_mode) {
    try {
      cfg.robust_mode = parse_robust_mode(*o.robust_mode);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (o.out) cfg.out = *o.out;
  if (o.workers) cfg.workers = *o.workers;
  if (o.no_runtime) cfg.record_runtime = false;
}

void validate(const RunConfig& cfg) {
  const auto& names = estimator_names();
  if (std::find(names.begin(), names.end(), cfg.estimator) == names.end()) {
    throw ConfigError("unknown estimator '" + cfg.estimator + "' (nmc, vnmc, ace, mine)");
  }
  if (cfg.n1 == 0 || cfg.n2 == 0 || cfg.m == 0) throw ConfigError("n1, n2 and m must be positive");
  if (cfg.workers == 0) throw ConfigError("workers must be positive");
  if (cfg.seeds.empty()) throw ConfigError("seed list is empty");
  if (cfg.epsilons.empty()) throw ConfigError("epsilon list is empty");
  for (double e : cfg.epsilons) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw ConfigError("epsilon values must be finite and >= 0");
  }
  if (cfg.robust_mode == RobustMode::kNone && cfg.epsilons.size() > 1) {
    throw ConfigError("an epsilon sweep needs a robust mode");
  }
  if (cfg.estimator == "mine") {
    if (cfg.n1 < 2) throw ConfigError("mine needs n1 >= 2");
    if (cfg.robust_mode == RobustMode::kReigJoint) throw ConfigError("reig_joint is defined for nmc only");
  }
  if (cfg.robust_mode == RobustMode::kReigJoint && cfg.estimator != "nmc") {
    throw ConfigError("reig_joint is defined for nmc only");
  }
  if (cfg.proposal.kind == ProposalSpec::Kind::kExact) {
    const auto name = cfg.model.value("name", std::string());
    if (name != "ab") throw ConfigError("the exact proposal exists for the ab model only");
  }
  try {
    (void)make_model(cfg.model);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace reig::cli
