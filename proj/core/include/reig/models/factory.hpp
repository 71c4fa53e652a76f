#pragma once

#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "reig/models/ab_test.hpp"
#include "reig/models/diagnostic.hpp"
#include "reig/models/independent.hpp"
#include "reig/models/pharmacokinetic.hpp"
#include "reig/models/preference.hpp"

namespace reig {

/// Registered model names: diagnostic, ab, preference, pk, independent.
std::vector<std::string> model_names();

/// Builds a model from a JSON document. "name" selects the model; an optional
/// "preset" of "reference" (default) or "perturbed" picks the prior; any other
/// field overrides the matching parameter (field names as in to_json()).
/// Throws std::invalid_argument on unknown names, presets or malformed fields.
std::unique_ptr<ExperimentModel> make_model(const nlohmann::json& config);

}  // namespace reig
