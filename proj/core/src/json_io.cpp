#include "tsmeta/json_io.hpp"

#include "tsmeta/error.hpp"

namespace tsmeta {

nlohmann::json params_to_json(const HyperParamAssignment& a) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : a.values) {
    std::visit([&](const auto& v) { j[name] = v; }, value);
  }
  return j;
}

HyperParamAssignment params_from_json(ModelId model, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidParams, "parameters must be a JSON object");
  const HyperParamSpace space = default_space(model);
  HyperParamAssignment a;
  a.model = model;
  for (const auto& [name, value] : j.items()) {
    const ParamDomain* d = space.find(name);
    if (d == nullptr) {
      throw Error(Errc::InvalidParams,
                  std::string(model_name(model)) + " has no parameter '" + name + "'");
    }
    if (std::holds_alternative<Categorical>(d->kind)) {
      if (!value.is_string()) throw Error(Errc::InvalidParams, "'" + name + "' must be a label");
      a.values[name] = value.get<std::string>();
    } else if (std::holds_alternative<IntegerRange>(d->kind)) {
      if (!value.is_number_integer()) throw Error(Errc::InvalidParams, "'" + name + "' must be an integer");
      a.values[name] = value.get<std::int64_t>();
    } else {
      if (!value.is_number()) throw Error(Errc::InvalidParams, "'" + name + "' must be a number");
      a.values[name] = value.get<double>();
    }
  }
  return a;
}

nlohmann::json feature_values_to_json(const FeatureVector& fv) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < kNumFeatures; ++i) j[std::string(feature_names()[i])] = fv.values[i];
  return j;
}

nlohmann::json feature_mask_to_json(const FeatureVector& fv) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < kNumFeatures; ++i) j[std::string(feature_names()[i])] = fv.defined[i];
  return j;
}

FeatureVector features_from_json(const nlohmann::json& values, const nlohmann::json& mask) {
  FeatureVector fv;
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    const std::string name(feature_names()[i]);
    if (!values.contains(name) || !mask.contains(name) || !values[name].is_number() ||
        !mask[name].is_boolean()) {
      throw Error(Errc::CorruptFile, "feature '" + name + "' missing or mistyped");
    }
    fv.values[i] = values[name].get<double>();
    fv.defined[i] = mask[name].get<bool>();
  }
  return fv;
}

}  // namespace tsmeta
