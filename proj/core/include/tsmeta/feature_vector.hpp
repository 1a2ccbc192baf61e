#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace tsmeta {

inline constexpr std::size_t kNumFeatures = 40;

// Fixed schema order; serialized names come from feature_name().
enum class Feature : std::size_t {
  Length,
  Mean,
  Variance,
  SpectralEntropy,
  Lumpiness,
  Stability,
  TrendStrength,
  SeasonalStrength,
  Spikiness,
  Peak,
  Trough,
  FlatSpots,
  LevelShiftMax,
  LevelShiftIndex,
  Hurst,
  AcfY1,
  AcfDiff1_1,
  AcfDiff2_1,
  AcfYSumsq5,
  AcfDiff1Sumsq5,
  AcfDiff2Sumsq5,
  AcfSeasonal,
  PacfYSumsq5,
  PacfDiff1Sumsq5,
  PacfDiff2Sumsq5,
  PacfSeasonal,
  FirstMinAc,
  FirstZeroAc,
  Linearity,
  StdDeriv1,
  CrossingPoints,
  BinarizeMean,
  ArchStat,
  HistogramMode,
  KpssStat,
  HoltAlpha,
  HoltBeta,
  HwAlpha,
  HwBeta,
  HwGamma,
};

std::string_view feature_name(Feature f) noexcept;
std::optional<Feature> feature_from_name(std::string_view name) noexcept;
const std::array<std::string_view, kNumFeatures>& feature_names() noexcept;

constexpr std::size_t index_of(Feature f) noexcept { return static_cast<std::size_t>(f); }

/// 40 finite values plus a parallel defined-mask. Undefined entries hold 0.
struct FeatureVector {
  std::array<double, kNumFeatures> values{};
  std::array<bool, kNumFeatures> defined{};

  double operator[](Feature f) const noexcept { return values[index_of(f)]; }
  bool is_defined(Feature f) const noexcept { return defined[index_of(f)]; }

  void set(Feature f, double v) noexcept {
    values[index_of(f)] = v;
    defined[index_of(f)] = true;
  }
  void mask(Feature f) noexcept {
    values[index_of(f)] = 0.0;
    defined[index_of(f)] = false;
  }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

}  // namespace tsmeta
