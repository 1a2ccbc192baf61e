#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace tsmeta::models {

struct SesState {
  double level = 0.0;
  double sse = 0.0;  // one-step-ahead, t = 1..n-1
};

/// Simple exponential smoothing with level initialised at y[0].
SesState ses_filter(std::span<const double> y, double alpha);

/// Alpha on a 0.01 grid over [0.01, 0.99] minimising one-step SSE.
double optimize_ses_alpha(std::span<const double> y);

struct HoltState {
  double level = 0.0;
  double trend = 0.0;
  double sse = 0.0;  // one-step-ahead, t = 1..n-1
};

/// Holt's linear method; level = y[0], trend = y[1] - y[0]. Needs n >= 2.
HoltState holt_filter(std::span<const double> y, double alpha, double beta);

struct HoltWintersState {
  double level = 0.0;
  double trend = 0.0;
  std::vector<double> seasonal;  // indexed by phase t mod m
  double sse = 0.0;              // one-step-ahead, t = m..n-1
};

/// Additive Holt-Winters. States come from the first two cycles: the trend
/// is the difference of the cycle means over m, the level is the first-cycle
/// mean carried to t = m-1 along that trend, and the seasonals are the
/// first-cycle deviations from the same line. Needs n >= 2m. The filter
/// stops early once sse reaches `sse_limit`, leaving a partial state whose
/// sse is still >= the limit; grid searches use this to skip losers.
HoltWintersState holt_winters_filter(std::span<const double> y, int period, double alpha,
                                     double beta, double gamma,
                                     double sse_limit = std::numeric_limits<double>::infinity());

/// Forecast from a filtered state at horizon h >= 1 for a series of length n.
double holt_winters_forecast(const HoltWintersState& s, std::size_t n, std::size_t h);

}  // namespace tsmeta::models
