#pragma once

#include <nlohmann/json.hpp>

#include "tsmeta/feature_vector.hpp"
#include "tsmeta/params.hpp"

namespace tsmeta {

nlohmann::json params_to_json(const HyperParamAssignment& a);

/// Values are coerced to the kinds declared by default_space(model).
/// Throws Error(InvalidParams) on unknown names or mistyped values.
HyperParamAssignment params_from_json(ModelId model, const nlohmann::json& j);

nlohmann::json feature_values_to_json(const FeatureVector& fv);
nlohmann::json feature_mask_to_json(const FeatureVector& fv);

/// Throws Error(CorruptFile) when any of the 40 names is missing.
FeatureVector features_from_json(const nlohmann::json& values, const nlohmann::json& mask);

}  // namespace tsmeta
