#pragma once

#include <span>

namespace tsmeta {

/// Mean absolute percentage error as a fraction (0.1 == 10%).
/// Throws LengthMismatch on unequal or empty inputs and ZeroActual if any
/// actual value is exactly zero.
double mape(std::span<const double> actual, std::span<const double> forecast);

}  // namespace tsmeta
