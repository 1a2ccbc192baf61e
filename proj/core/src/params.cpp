#include "tsmeta/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsmeta/error.hpp"

namespace tsmeta {
namespace {

constexpr std::array<std::string_view, kNumModels> kModelNames = {
    "ARIMA", "HOLT_LINEAR", "HOLT_WINTERS", "SEASONAL_NAIVE", "STLF", "THETA",
};

const ParamValue& lookup(const HyperParamAssignment& a, std::string_view name) {
  const auto it = a.values.find(name);
  if (it == a.values.end()) {
    throw Error(Errc::InvalidParams, std::string(model_name(a.model)) + " has no parameter '" +
                                         std::string(name) + "'");
  }
  return it->second;
}

ParamDomain continuous(std::string name, double lo, double hi) {
  return ParamDomain{std::move(name), ContinuousRange{lo, hi}};
}
ParamDomain integer(std::string name, std::int64_t lo, std::int64_t hi) {
  return ParamDomain{std::move(name), IntegerRange{lo, hi}};
}

}  // namespace

std::string_view model_name(ModelId id) noexcept { return kModelNames[model_index(id)]; }

std::optional<ModelId> model_from_name(std::string_view name) noexcept {
  for (ModelId id : kAllModels) {
    if (model_name(id) == name) return id;
  }
  return std::nullopt;
}

const ParamDomain* HyperParamSpace::find(std::string_view name) const noexcept {
  for (const ParamDomain& d : domains) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

double HyperParamAssignment::number(std::string_view name) const {
  const ParamValue& v = lookup(*this, name);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  throw Error(Errc::InvalidParams, "parameter '" + std::string(name) + "' is categorical");
}

std::int64_t HyperParamAssignment::integer(std::string_view name) const {
  const ParamValue& v = lookup(*this, name);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  throw Error(Errc::InvalidParams, "parameter '" + std::string(name) + "' is not an integer");
}

const std::string& HyperParamAssignment::label(std::string_view name) const {
  const ParamValue& v = lookup(*this, name);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw Error(Errc::InvalidParams, "parameter '" + std::string(name) + "' is not categorical");
}

HyperParamSpace default_space(ModelId id) {
  HyperParamSpace space{id, {}};
  switch (id) {
    case ModelId::Theta:
      space.domains = {continuous("theta", 0.0, 3.0)};
      break;
    case ModelId::HoltLinear:
      space.domains = {continuous("alpha", 0.05, 0.95), continuous("beta", 0.05, 0.95)};
      break;
    case ModelId::HoltWinters:
      space.domains = {continuous("alpha", 0.05, 0.95), continuous("beta", 0.05, 0.95),
                       continuous("gamma", 0.05, 0.95)};
      break;
    case ModelId::Stlf:
      space.domains = {ParamDomain{"base_method", Categorical{{"naive", "ses", "linear"}}},
                       continuous("alpha", 0.05, 0.95)};
      break;
    case ModelId::Arima:
      space.domains = {integer("p", 0, 3), integer("d", 0, 2), integer("q", 0, 3)};
      break;
    case ModelId::SeasonalNaive:
      break;
  }
  return space;
}

void validate(const HyperParamAssignment& a, const HyperParamSpace& space) {
  const std::string model(model_name(space.model));
  if (a.model != space.model) {
    throw Error(Errc::InvalidParams, "assignment for " + std::string(model_name(a.model)) +
                                         " checked against " + model + " space");
  }
  if (a.values.size() != space.domains.size()) {
    throw Error(Errc::InvalidParams, model + ": expected " + std::to_string(space.domains.size()) +
                                         " parameters, got " + std::to_string(a.values.size()));
  }
  for (const ParamDomain& d : space.domains) {
    const auto it = a.values.find(d.name);
    if (it == a.values.end()) throw Error(Errc::InvalidParams, model + ": missing '" + d.name + "'");
    const ParamValue& v = it->second;
    const bool ok = std::visit(
        [&](const auto& dom) -> bool {
          using D = std::decay_t<decltype(dom)>;
          if constexpr (std::is_same_v<D, Categorical>) {
            const auto* s = std::get_if<std::string>(&v);
            return s && std::find(dom.labels.begin(), dom.labels.end(), *s) != dom.labels.end();
          } else if constexpr (std::is_same_v<D, IntegerRange>) {
            const auto* i = std::get_if<std::int64_t>(&v);
            return i && *i >= dom.lo && *i <= dom.hi;
          } else {
            const auto* x = std::get_if<double>(&v);
            return x && std::isfinite(*x) && *x >= dom.lo && *x <= dom.hi;
          }
        },
        d.kind);
    if (!ok) throw Error(Errc::InvalidParams, model + ": value of '" + d.name + "' outside its domain");
  }
}

bool is_valid(const HyperParamAssignment& a, const HyperParamSpace& space) noexcept {
  try {
    validate(a, space);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string to_string(const HyperParamAssignment& a) {
  std::ostringstream out;
  out << model_name(a.model) << '(';
  bool first = true;
  for (const auto& [name, value] : a.values) {
    if (!first) out << ", ";
    first = false;
    out << name << '=';
    std::visit([&](const auto& v) { out << v; }, value);
  }
  out << ')';
  return out.str();
}

}  // namespace tsmeta
