#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reig/estimators/mine.hpp"
#include "reig/proposals/training.hpp"
#include "reig/robust/reig.hpp"

namespace reig::cli {

/// Malformed configuration or command line (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Where the inner proposal of vnmc/ace comes from.
struct ProposalSpec {
  enum class Kind { kPrior, kTrained, kExact, kFile };
  Kind kind = Kind::kTrained;
  /// kFile: JSON object mapping design labels to affine proposals.
  std::string path;
};

struct RunConfig {
  nlohmann::json model = {{"name", "ab"}};
  std::string estimator = "nmc";
  RobustMode robust_mode = RobustMode::kNone;
  std::vector<double> epsilons = {0.0};
  std::size_t n1 = 100;
  std::size_t n2 = 10;
  std::size_t m = 30;
  std::vector<std::uint64_t> seeds;
  /// Design values to evaluate; empty means the model's full grid.
  std::vector<double> designs;
  ProposalSpec proposal;
  /// Where trained proposals are written (same layout as ProposalSpec::kFile).
  std::string save_proposals;
  ProposalTrainingOptions training;
  ScorerTrainingOptions scorer;
  /// Exact summation for finite models (diagnostic).
  bool enumerate = true;
  /// When false runtime_ms is written as 0, making output byte-reproducible.
  bool record_runtime = true;
  unsigned workers = 1;
  std::string out;
};

/// Flag values that take precedence over the config document.
struct Overrides {
  std::optional<std::string> epsilon;
  std::optional<std::size_t> n1, n2, m;
  std::optional<std::string> seed;
  std::optional<std::string> model;
  std::optional<std::string> estimator;
  std::optional<std::string> robust_mode;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
  bool no_runtime = false;
};

inline const std::vector<std::string>& estimator_names() {
  static const std::vector<std::string> names{"nmc", "vnmc", "ace", "mine"};
  return names;
}

/// Parses a config document. Unknown keys are rejected so typos do not pass
/// silently. Seeds default to `default_seed` when none are given.
RunConfig parse_run_config(const nlohmann::json& doc, std::uint64_t default_seed);
RunConfig load_run_config(const std::string& path, std::uint64_t default_seed);
void apply_overrides(RunConfig& cfg, const Overrides& o);
/// Cross-field checks (estimator/mode combinations, nonempty lists, ranges).
void validate(const RunConfig& cfg);

/// Comma-separated number list, e.g. "0,0.01,0.1".
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

/// Master seed from REIG_LAB_SEED if set, else 0. Throws ConfigError on junk.
std::uint64_t default_seed_from_env();

}  // namespace reig::cli
