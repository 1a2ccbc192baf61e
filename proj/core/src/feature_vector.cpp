#include "tsmeta/feature_vector.hpp"

namespace tsmeta {
namespace {

constexpr std::array<std::string_view, kNumFeatures> kNames = {
    "length",           "mean",              "variance",          "spectral_entropy",
    "lumpiness",        "stability",         "trend_strength",    "seasonal_strength",
    "spikiness",        "peak",              "trough",            "flat_spots",
    "level_shift_max",  "level_shift_index", "hurst",             "acf_y_1",
    "acf_diff1_1",      "acf_diff2_1",       "acf_y_sumsq5",      "acf_diff1_sumsq5",
    "acf_diff2_sumsq5", "acf_seasonal",      "pacf_y_sumsq5",     "pacf_diff1_sumsq5",
    "pacf_diff2_sumsq5", "pacf_seasonal",    "first_min_ac",      "first_zero_ac",
    "linearity",        "std_deriv1",        "crossing_points",   "binarize_mean",
    "arch_stat",        "histogram_mode",    "kpss_stat",         "holt_alpha",
    "holt_beta",        "hw_alpha",          "hw_beta",           "hw_gamma",
};

static_assert(kNames.size() == static_cast<std::size_t>(Feature::HwGamma) + 1);

}  // namespace

std::string_view feature_name(Feature f) noexcept { return kNames[index_of(f)]; }

std::optional<Feature> feature_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Feature>(i);
  }
  return std::nullopt;
}

const std::array<std::string_view, kNumFeatures>& feature_names() noexcept { return kNames; }

}  // namespace tsmeta
