#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "csv.hpp"
#include "run.hpp"

namespace reig::cli {

const std::vector<std::string>& figure_names();

/// Options shared by all figures. Unset budgets fall back to per-figure
/// defaults.
struct FigureOptions {
  Overrides overrides;
  std::vector<double> designs;
  std::uint64_t seed = 0;
};

/// fig1: exact EIG of both diagnostic tests over a grid of prior probabilities.
Table figure_fig1(std::size_t points = 999);

/// worstcase: EIG under the reference and the perturbed preference priors and
/// the REIG of the reference with epsilon = KL(perturbed || reference), per design.
Table figure_worstcase(const FigureOptions& options);

/// abtest / preference / pk: estimator convergence over M, the MINE sample-size
/// sweep and the epsilon sweep, as estimate records.
std::vector<EstimateRecord> figure_convergence(const std::string& model, const FigureOptions& options);

}  // namespace reig::cli
