#include "tsmeta/smoothing.hpp"

#include <limits>

namespace tsmeta::models {

SesState ses_filter(std::span<const double> y, double alpha) {
  SesState s;
  if (y.empty()) return s;
  s.level = y[0];
  for (std::size_t t = 1; t < y.size(); ++t) {
    const double e = y[t] - s.level;
    s.sse += e * e;
    s.level += alpha * e;
  }
  return s;
}

double optimize_ses_alpha(std::span<const double> y) {
  double best_alpha = 0.5;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 99; ++k) {
    const double alpha = k / 100.0;
    const double sse = ses_filter(y, alpha).sse;
    if (sse < best_sse) {
      best_sse = sse;
      best_alpha = alpha;
    }
  }
  return best_alpha;
}

HoltState holt_filter(std::span<const double> y, double alpha, double beta) {
  HoltState s;
  if (y.size() < 2) {
    s.level = y.empty() ? 0.0 : y[0];
    return s;
  }
  s.level = y[0];
  s.trend = y[1] - y[0];
  for (std::size_t t = 1; t < y.size(); ++t) {
    const double e = y[t] - (s.level + s.trend);
    s.sse += e * e;
    const double level = alpha * y[t] + (1.0 - alpha) * (s.level + s.trend);
    s.trend = beta * (level - s.level) + (1.0 - beta) * s.trend;
    s.level = level;
  }
  return s;
}

HoltWintersState holt_winters_filter(std::span<const double> y, int period, double alpha,
                                     double beta, double gamma, double sse_limit) {
  const auto m = static_cast<std::size_t>(period);
  HoltWintersState s;
  s.seasonal.assign(m, 0.0);
  if (period < 2 || y.size() < 2 * m) return s;

  double c1 = 0.0, c2 = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    c1 += y[j];
    c2 += y[m + j];
  }
  c1 /= static_cast<double>(m);
  c2 /= static_cast<double>(m);
  s.trend = (c2 - c1) / static_cast<double>(m);
  const double centre = static_cast<double>(m - 1) / 2.0;
  s.level = c1 + s.trend * centre;
  for (std::size_t j = 0; j < m; ++j) {
    s.seasonal[j] = y[j] - (c1 + s.trend * (static_cast<double>(j) - centre));
  }

  for (std::size_t t = m; t < y.size(); ++t) {
    const std::size_t phase = t % m;
    const double e = y[t] - (s.level + s.trend + s.seasonal[phase]);
    s.sse += e * e;
    if (s.sse >= sse_limit) break;
    const double level = alpha * (y[t] - s.seasonal[phase]) + (1.0 - alpha) * (s.level + s.trend);
    s.trend = beta * (level - s.level) + (1.0 - beta) * s.trend;
    s.seasonal[phase] = gamma * (y[t] - level) + (1.0 - gamma) * s.seasonal[phase];
    s.level = level;
  }
  return s;
}

double holt_winters_forecast(const HoltWintersState& s, std::size_t n, std::size_t h) {
  const std::size_t m = s.seasonal.size();
  return s.level + static_cast<double>(h) * s.trend + s.seasonal[(n - 1 + h) % m];
}

}  // namespace tsmeta::models
