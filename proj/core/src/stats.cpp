#include "tsmeta/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsmeta::stats {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

double population_variance(std::span<const double> x) {
  if (x.empty()) return 0.0;
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size());
}

double median(std::span<const double> x) {
  if (x.empty()) return 0.0;
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

bool is_constant(std::span<const double> x) {
  if (x.empty()) return true;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  return *hi - *lo <= 1e-12 * scale;
}

std::vector<double> diff(std::span<const double> x) {
  std::vector<double> out;
  if (x.size() < 2) return out;
  out.reserve(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) out.push_back(x[i] - x[i - 1]);
  return out;
}

LineFit fit_line(std::span<const double> x) {
  LineFit fit;
  const std::size_t n = x.size();
  if (n == 0) return fit;
  const double t_mean = static_cast<double>(n - 1) / 2.0;
  const double x_mean = mean(x);
  double stt = 0.0, stx = 0.0, sxx = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double dt = static_cast<double>(t) - t_mean;
    const double dx = x[t] - x_mean;
    stt += dt * dt;
    stx += dt * dx;
    sxx += dx * dx;
  }
  fit.slope = stt > 0.0 ? stx / stt : 0.0;
  fit.intercept = x_mean - fit.slope * t_mean;
  if (sxx > 0.0 && stt > 0.0) fit.r_squared = std::clamp(stx * stx / (stt * sxx), 0.0, 1.0);
  return fit;
}

}  // namespace tsmeta::stats
