#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "tsmeta/series.hpp"

namespace tsmeta::synthetic {

enum class Family { TrendSeasonal, Ar1, RandomWalk };

std::string_view family_name(Family f) noexcept;

struct SyntheticConfig {
  std::size_t length = 120;
  int period = 12;
};

/// One strictly positive series; identical (family, seed, index) give
/// identical output.
TimeSeries generate_series(Family family, std::uint64_t seed, std::size_t index, const SyntheticConfig& cfg = {});

/// `count` series cycling through the three families; ids sort in index order.
std::vector<TimeSeries> generate_corpus(std::size_t count, std::uint64_t seed, const SyntheticConfig& cfg = {});

}  // namespace tsmeta::synthetic
