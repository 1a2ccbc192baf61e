#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tsmeta/decomposition.hpp"
#include "tsmeta/feature_vector.hpp"
#include "tsmeta/series.hpp"

namespace tsmeta::features {

// Bins used by flat_spots and histogram_mode.
inline constexpr int kDefaultBins = 10;

/// Sample autocorrelations r_1..r_max_lag (biased, divide-by-n estimator).
/// Throws ConstantInput for zero-variance input and TooShort if
/// max_lag >= x.size().
std::vector<double> acf(std::span<const double> x, std::size_t max_lag);

/// Partial autocorrelations via Durbin-Levinson on acf(x, max_lag).
std::vector<double> pacf(std::span<const double> x, std::size_t max_lag);

/// Durbin-Levinson on r_1..r_k; returns phi_11..phi_kk.
std::vector<double> pacf_from_acf(std::span<const double> r);

// std::nullopt marks an undefined (masked) feature.
using Maybe = std::optional<double>;

struct AcfPacfFeatures {
  Maybe acf_y_1, acf_diff1_1, acf_diff2_1;
  Maybe acf_y_sumsq5, acf_diff1_sumsq5, acf_diff2_sumsq5;
  Maybe acf_seasonal;
  Maybe pacf_y_sumsq5, pacf_diff1_sumsq5, pacf_diff2_sumsq5;
  Maybe pacf_seasonal;
};

/// Throws TooShort when the twice-differenced series has fewer than 8 points.
AcfPacfFeatures acf_pacf_features(const TimeSeries& ts);

/// Normalised Shannon entropy of the periodogram, in [0, 1].
double spectral_entropy(const TimeSeries& ts);

struct WindowFeatures {
  Maybe lumpiness, stability, level_shift_max, level_shift_index;
};

/// Tile width max(m, 10) (10 when non-seasonal); masked when n < 2w.
WindowFeatures window_features(const TimeSeries& ts);

struct StlFeatures {
  Maybe trend_strength, seasonal_strength, spikiness, peak, trough;
};

StlFeatures stl_features(const Decomposition& d);

struct DistributionFeatures {
  double flat_spots = 0.0;
  double histogram_mode = 0.0;
  double binarize_mean = 0.0;
  double crossing_points = 0.0;
};

DistributionFeatures distribution_features(const TimeSeries& ts, int nbins = kDefaultBins);

struct DependenceFeatures {
  Maybe hurst, first_min_ac, first_zero_ac;
};

DependenceFeatures dependence_features(const TimeSeries& ts);

/// Rescaled-range Hurst estimate; nullopt when n < 20.
Maybe hurst_exponent(std::span<const double> x);

struct StationarityFeatures {
  Maybe kpss_stat, arch_stat;
};

StationarityFeatures stationarity_features(const TimeSeries& ts);

struct RegressionFeatures {
  double linearity = 0.0;
  double std_deriv1 = 0.0;
};

RegressionFeatures regression_features(const TimeSeries& ts);

struct SmoothingParamFeatures {
  double holt_alpha = 0.05, holt_beta = 0.05;
  Maybe hw_alpha, hw_beta, hw_gamma;
};

/// Grid step for the smoothing-parameter features, over [0.05, 0.95].
inline constexpr double kSmoothingGridStep = 0.05;

SmoothingParamFeatures smoothing_param_features(const TimeSeries& ts);

/// All 40 features. Never throws for a valid series; any feature that cannot
/// be computed is stored as 0 with its mask bit cleared.
FeatureVector extract_features(const TimeSeries& ts);

}  // namespace tsmeta::features
