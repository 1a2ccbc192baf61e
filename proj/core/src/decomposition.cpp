#include "tsmeta/decomposition.hpp"

#include <algorithm>

#include "tsmeta/error.hpp"

namespace tsmeta::features {
namespace {

std::vector<double> centered_weights(int period, std::size_t n) {
  if (period == 1) {
    int w = kNonSeasonalTrendWindow;
    while (static_cast<std::size_t>(w) > n) w -= 2;
    return std::vector<double>(static_cast<std::size_t>(w), 1.0 / w);
  }
  if (period % 2 == 1) return std::vector<double>(static_cast<std::size_t>(period), 1.0 / period);
  std::vector<double> w(static_cast<std::size_t>(period) + 1, 1.0 / period);
  w.front() = w.back() = 0.5 / period;
  return w;
}

// Least-squares line through (idx[i], val[i]) evaluated at `at`.
double extrapolate(std::span<const double> idx, std::span<const double> val, double at) {
  const std::size_t k = idx.size();
  if (k == 1) return val[0];
  double mi = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mi += idx[i];
    mv += val[i];
  }
  mi /= static_cast<double>(k);
  mv /= static_cast<double>(k);
  double sii = 0.0, siv = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sii += (idx[i] - mi) * (idx[i] - mi);
    siv += (idx[i] - mi) * (val[i] - mv);
  }
  const double slope = sii > 0.0 ? siv / sii : 0.0;
  return mv + slope * (at - mi);
}

}  // namespace

Decomposition decompose(std::span<const double> y, int period) {
  if (period < 1) throw Error(Errc::BadPeriod, "decompose: period must be >= 1");
  const std::size_t n = y.size();
  const std::vector<double> weights = centered_weights(period, n);
  const std::size_t span = weights.size();
  if (n < span) throw Error(Errc::TooShort, "decompose: series shorter than trend window");
  const std::size_t half = span / 2;

  Decomposition d;
  d.period = period;
  d.trend.assign(n, 0.0);
  for (std::size_t t = half; t + half < n; ++t) {
    double acc = 0.0;
    for (std::size_t j = 0; j < span; ++j) acc += weights[j] * y[t - half + j];
    d.trend[t] = acc;
  }

  const std::size_t first = half;
  const std::size_t last = n - 1 - half;
  const std::size_t fit_len = std::min(span, last - first + 1);
  std::vector<double> idx(fit_len), val(fit_len);
  for (std::size_t i = 0; i < fit_len; ++i) {
    idx[i] = static_cast<double>(first + i);
    val[i] = d.trend[first + i];
  }
  for (std::size_t t = 0; t < first; ++t) d.trend[t] = extrapolate(idx, val, static_cast<double>(t));
  for (std::size_t i = 0; i < fit_len; ++i) {
    idx[i] = static_cast<double>(last - fit_len + 1 + i);
    val[i] = d.trend[last - fit_len + 1 + i];
  }
  for (std::size_t t = last + 1; t < n; ++t) d.trend[t] = extrapolate(idx, val, static_cast<double>(t));

  d.seasonal.assign(n, 0.0);
  if (period > 1) {
    const auto m = static_cast<std::size_t>(period);
    std::vector<double> sums(m, 0.0);
    std::vector<std::size_t> counts(m, 0);
    for (std::size_t t = 0; t < n; ++t) {
      sums[t % m] += y[t] - d.trend[t];
      ++counts[t % m];
    }
    double centre = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      sums[j] /= static_cast<double>(counts[j]);
      centre += sums[j];
    }
    centre /= static_cast<double>(m);
    for (std::size_t t = 0; t < n; ++t) d.seasonal[t] = sums[t % m] - centre;
  }

  d.remainder.resize(n);
  for (std::size_t t = 0; t < n; ++t) d.remainder[t] = y[t] - d.trend[t] - d.seasonal[t];
  return d;
}

Decomposition decompose(const TimeSeries& ts) { return decompose(ts.values(), ts.effective_period()); }

}  // namespace tsmeta::features
