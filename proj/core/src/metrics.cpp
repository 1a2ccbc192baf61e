#include "tsmeta/metrics.hpp"

#include <cmath>
#include <string>

#include "tsmeta/error.hpp"

namespace tsmeta {

double mape(std::span<const double> actual, std::span<const double> forecast) {
  if (actual.size() != forecast.size() || actual.empty()) {
    throw Error(Errc::LengthMismatch, "mape needs equal non-empty inputs, got " +
                                          std::to_string(actual.size()) + " and " +
                                          std::to_string(forecast.size()));
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < actual.size(); ++t) {
    if (actual[t] == 0.0) throw Error(Errc::ZeroActual, "actual value is 0 at step " + std::to_string(t));
    sum += std::abs(actual[t] - forecast[t]) / std::abs(actual[t]);
  }
  return sum / static_cast<double>(actual.size());
}

}  // namespace tsmeta
