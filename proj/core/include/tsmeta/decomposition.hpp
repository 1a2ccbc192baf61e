#pragma once

#include <span>
#include <vector>

#include "tsmeta/series.hpp"

namespace tsmeta::features {

/// Additive split y = trend + seasonal + remainder.
struct Decomposition {
  std::vector<double> trend;
  std::vector<double> seasonal;
  std::vector<double> remainder;
  int period = 1;
};

// Smoothing window used for the trend when there is no usable season.
inline constexpr int kNonSeasonalTrendWindow = 7;

/// Classical additive decomposition. The trend is a centered moving average
/// (2xm for even m, m for odd m, kNonSeasonalTrendWindow when m == 1) whose
/// missing ends are extrapolated by a least-squares line through the nearest
/// smoothed values. The seasonal component is the zero-mean per-phase mean
/// of the detrended series, tiled.
Decomposition decompose(std::span<const double> y, int period);

/// Uses the series' effective period (1 unless seasonal_usable).
Decomposition decompose(const TimeSeries& ts);

}  // namespace tsmeta::features
