#pragma once

#include <array>
#include <span>

#include <nlohmann/json.hpp>

#include "tsmeta/feature_vector.hpp"

namespace tsmeta::learners {

/// Dense learner input: standardized features, masked entries set to 0.
using Input = std::array<double, kNumFeatures>;

/// Per-feature z-scoring fitted on a training meta-set. Statistics use only
/// the records where a feature is defined; the scale is the population
/// standard deviation, replaced by 1 when it is zero.
class Standardizer {
 public:
  Standardizer();

  /// Throws Error(TooFewRecords) for fewer than two records.
  static Standardizer fit(std::span<const FeatureVector> train);

  Input apply(const FeatureVector& fv) const noexcept;
  /// Undoes apply() on the entries the mask marks as defined.
  FeatureVector inverse(const Input& z, const std::array<bool, kNumFeatures>& defined) const noexcept;

  const std::array<double, kNumFeatures>& means() const noexcept { return mean_; }
  const std::array<double, kNumFeatures>& scales() const noexcept { return scale_; }

  nlohmann::json to_json() const;
  static Standardizer from_json(const nlohmann::json& j);

  friend bool operator==(const Standardizer&, const Standardizer&) = default;

 private:
  std::array<double, kNumFeatures> mean_{};
  std::array<double, kNumFeatures> scale_{};
};

}  // namespace tsmeta::learners
