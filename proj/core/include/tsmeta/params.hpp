#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tsmeta {

// Enumerators are declared in lexicographic order of their serialized names,
// so comparing ModelIds is the lexicographic tie-break used everywhere.
enum class ModelId { Arima, HoltLinear, HoltWinters, SeasonalNaive, Stlf, Theta };

inline constexpr std::array<ModelId, 6> kAllModels = {
    ModelId::Arima,         ModelId::HoltLinear, ModelId::HoltWinters,
    ModelId::SeasonalNaive, ModelId::Stlf,       ModelId::Theta,
};
inline constexpr std::size_t kNumModels = kAllModels.size();

std::string_view model_name(ModelId id) noexcept;
std::optional<ModelId> model_from_name(std::string_view name) noexcept;
constexpr std::size_t model_index(ModelId id) noexcept { return static_cast<std::size_t>(id); }

struct Categorical {
  std::vector<std::string> labels;
};
struct IntegerRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};
struct ContinuousRange {
  double lo = 0.0;
  double hi = 1.0;
};

struct ParamDomain {
  std::string name;
  std::variant<Categorical, IntegerRange, ContinuousRange> kind;

  bool is_categorical() const noexcept { return std::holds_alternative<Categorical>(kind); }
};

using ParamValue = std::variant<std::int64_t, double, std::string>;

struct HyperParamSpace {
  ModelId model = ModelId::Arima;
  std::vector<ParamDomain> domains;

  const ParamDomain* find(std::string_view name) const noexcept;
};

/// A concrete setting for every domain of a model's space.
struct HyperParamAssignment {
  ModelId model = ModelId::Arima;
  std::map<std::string, ParamValue, std::less<>> values;

  /// Continuous or integer value widened to double.
  double number(std::string_view name) const;
  std::int64_t integer(std::string_view name) const;
  const std::string& label(std::string_view name) const;

  friend bool operator==(const HyperParamAssignment&, const HyperParamAssignment&) = default;
};

/// Search spaces the tuners and learners use by default.
HyperParamSpace default_space(ModelId id);

/// Throws Error(InvalidParams) when a value is missing, extra, mistyped, or
/// outside its domain.
void validate(const HyperParamAssignment& a, const HyperParamSpace& space);
bool is_valid(const HyperParamAssignment& a, const HyperParamSpace& space) noexcept;

std::string to_string(const HyperParamAssignment& a);

}  // namespace tsmeta
