#pragma once

#include <span>
#include <vector>

namespace tsmeta::stats {

double mean(std::span<const double> x);

/// Sample variance with divisor n-1; 0 for fewer than two points.
double variance(std::span<const double> x);

/// Population variance (divisor n).
double population_variance(std::span<const double> x);

double median(std::span<const double> x);

/// max - min is negligible relative to the magnitude of the data.
bool is_constant(std::span<const double> x);

std::vector<double> diff(std::span<const double> x);

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;  // 0 when total variance is zero
};

/// OLS of x_t on (1, t) for t = 0..n-1.
LineFit fit_line(std::span<const double> x);

}  // namespace tsmeta::stats
