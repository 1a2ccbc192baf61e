#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsmeta/params.hpp"
#include "tsmeta/rng.hpp"
#include "tsmeta/series.hpp"

namespace tsmeta::tuning {

inline constexpr std::size_t kDefaultTrials = 20;
inline constexpr std::size_t kDefaultGridResolution = 5;
inline constexpr std::size_t kMaxGridSize = 100000;

struct TrialResult {
  HyperParamAssignment assignment;
  std::optional<double> error;  // holdout MAPE; empty when the trial failed
  std::size_t trial_index = 0;
  std::string failure;

  bool failed() const noexcept { return !error.has_value(); }
};

struct SearchResult {
  TrialResult best;
  std::vector<TrialResult> trials;
};

/// Fit on the train split, forecast the holdout, score with MAPE. Any fit
/// failure, non-finite forecast or unscoreable holdout yields failed().
TrialResult evaluate_params(ModelId id, const HyperParamAssignment& assignment,
                            const TimeSeries& ts, const SplitConfig& cfg);

/// Key of the RNG stream owned by one trial.
std::uint64_t trial_key(std::uint64_t seed, std::string_view series_id, ModelId id,
                        std::uint64_t trial);

/// Continuous domains uniform on [lo, hi]; integers and labels uniform.
HyperParamAssignment draw_assignment(const HyperParamSpace& space, KeyedRng& rng);

/// `trials` independent draws, each from its own keyed stream; the best is
/// the lowest-error successful trial, ties going to the lower index. Trial
/// k is identical whatever the total number of trials.
SearchResult random_search(ModelId id, const TimeSeries& ts, const HyperParamSpace& space,
                           std::size_t trials, std::uint64_t seed, const SplitConfig& cfg);

/// Cartesian grid in lexicographic order of the domain values. Continuous
/// domains take `resolution` evenly spaced points including both ends;
/// integer and categorical domains are enumerated in full.
std::vector<HyperParamAssignment> grid_points(const HyperParamSpace& space, std::size_t resolution);

/// Throws GridTooLarge above kMaxGridSize points.
SearchResult grid_search(ModelId id, const TimeSeries& ts, const HyperParamSpace& space,
                         std::size_t resolution, const SplitConfig& cfg);

}  // namespace tsmeta::tuning
