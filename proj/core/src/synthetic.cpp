#include "tsmeta/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "tsmeta/rng.hpp"

namespace tsmeta::synthetic {

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::TrendSeasonal: return "trend_seasonal";
    case Family::Ar1: return "ar1";
    case Family::RandomWalk: return "random_walk";
  }
  return "?";
}

TimeSeries generate_series(Family family, std::uint64_t seed, std::size_t index, const SyntheticConfig& cfg) {
  KeyedRng rng(stream_key({seed, hash_string("synthetic"), static_cast<std::uint64_t>(family), index}));
  auto between = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
  const std::size_t n = cfg.length;
  std::vector<double> y(n);

  switch (family) {
    case Family::TrendSeasonal: {
      const double level = between(50.0, 150.0);
      const double slope = between(-0.1, 0.5) * level / 100.0;
      const double amp = between(0.05, 0.25) * level;
      const double phase = between(0.0, 2.0 * std::numbers::pi);
      const double amp2 = between(0.0, 0.4) * amp;
      const double noise = between(0.005, 0.04) * level;
      const double m = std::max(1, cfg.period);
      for (std::size_t t = 0; t < n; ++t) {
        const double w = 2.0 * std::numbers::pi * static_cast<double>(t) / m;
        y[t] = level + slope * static_cast<double>(t) + amp * std::sin(w + phase) + amp2 * std::sin(2.0 * w) +
               noise * rng.normal();
      }
      break;
    }
    case Family::Ar1: {
      const double mean = between(50.0, 150.0);
      const double phi = between(0.3, 0.9);
      const double sd = between(0.01, 0.05) * mean;
      double dev = sd / std::sqrt(1.0 - phi * phi) * rng.normal();
      for (std::size_t t = 0; t < n; ++t) {
        dev = phi * dev + sd * rng.normal();
        y[t] = mean + dev;
      }
      break;
    }
    case Family::RandomWalk: {
      const double start = between(50.0, 150.0);
      const double drift = between(-0.002, 0.004) * start;
      const double sd = between(0.01, 0.03) * start;
      double v = start;
      for (std::size_t t = 0; t < n; ++t) {
        v += drift + sd * rng.normal();
        y[t] = v;
      }
      break;
    }
  }
  // Shift up if noise pushed a value too close to zero; MAPE needs positive actuals.
  const double lo = *std::min_element(y.begin(), y.end());
  if (lo < 10.0) {
    for (double& v : y) v += 10.0 - lo;
  }
  char id[64];
  std::snprintf(id, sizeof id, "syn%05zu_%s", index, family_name(family).data());
  return TimeSeries::from_values(id, y, cfg.period);
}

std::vector<TimeSeries> generate_corpus(std::size_t count, std::uint64_t seed, const SyntheticConfig& cfg) {
  static constexpr std::array<Family, 3> kCycle = {Family::TrendSeasonal, Family::Ar1, Family::RandomWalk};
  std::vector<TimeSeries> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(generate_series(kCycle[i % 3], seed, i, cfg));
  return out;
}

}  // namespace tsmeta::synthetic
