#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "reig/core/record.hpp"
#include "reig/models/model.hpp"

namespace reig::cli {

struct RunResult {
  std::vector<EstimateRecord> records;
  /// One message per (design, seed) cell that failed.
  std::vector<std::string> failures;
  std::size_t cells = 0;
};

/// Evaluates every (design, seed) cell of the config, fanned out over
/// cfg.workers threads. Divergence samples are computed once per cell and
/// reused across the epsilon sweep. Records come back ordered by design, then
/// seed, then epsilon, whatever the completion order. A failing cell is
/// reported in `failures` and contributes no records. `proposals`, when
/// given, replaces the proposal file of a ProposalSpec::Kind::kFile config.
RunResult run_experiment(const RunConfig& cfg, const nlohmann::json* proposals = nullptr);

/// Designs selected by the config: the model grid, or the listed values.
std::vector<Design> selected_designs(const ExperimentModel& model, const RunConfig& cfg);

}  // namespace reig::cli
