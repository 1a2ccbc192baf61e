#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsmeta/feature_vector.hpp"
#include "tsmeta/params.hpp"
#include "tsmeta/series.hpp"
#include "tsmeta/strategy.hpp"
#include "tsmeta/tuning.hpp"

namespace tsmeta::metadata {

inline constexpr std::string_view kSchemaVersion = "v1";

struct ModelEntry {
  HyperParamAssignment best_params;
  std::optional<double> mape;  // empty when every trial failed

  bool failed() const noexcept { return !mape.has_value(); }
};

/// One offline training row: features, per-model tuned parameters and
/// errors, and the winning model.
struct MetaRecord {
  std::string series_id;
  FeatureVector features;
  std::array<ModelEntry, kNumModels> per_model;
  std::optional<ModelId> best_model;  // empty => quarantined

  const ModelEntry& entry(ModelId id) const { return per_model[model_index(id)]; }
  bool quarantined() const noexcept { return !best_model.has_value(); }
};

struct MetaConfig {
  std::size_t trials = tuning::kDefaultTrials;
  std::uint64_t seed = 0;
  std::optional<std::size_t> horizon;  // default_horizon() when empty
};

SplitConfig split_for(const TimeSeries& ts, std::optional<std::size_t> horizon);

/// Argmin over non-failed entries; ties go to the lexicographically smaller
/// model name.
std::optional<ModelId> best_model_of(const std::array<ModelEntry, kNumModels>& per_model);

/// random_search(trials) for every model plus one feature extraction.
MetaRecord build_meta_record(const TimeSeries& ts, std::span<const HyperParamSpace> spaces,
                             const MetaConfig& cfg);
MetaRecord build_meta_record(const TimeSeries& ts, const MetaConfig& cfg);

std::array<HyperParamSpace, kNumModels> default_spaces();

struct Corpus {
  std::vector<MetaRecord> records;       // sorted by series id, quarantined excluded
  std::vector<std::string> quarantined;  // ids where every model failed
  std::vector<std::string> skipped;      // "file: reason" for unreadable inputs
};

/// Builds records for all series on up to `jobs` threads; output order is
/// by series id regardless of scheduling.
Corpus build_corpus(const std::vector<TimeSeries>& series, const MetaConfig& cfg, std::size_t jobs = 1);

/// Reads every *.csv in `dir` (period applied to all), skipping and
/// reporting files that fail to parse or validate.
Corpus build_corpus(const std::filesystem::path& dir, int period, const MetaConfig& cfg,
                    std::size_t jobs = 1);

nlohmann::json record_to_json(const MetaRecord& r);
/// Throws SchemaMismatch on a wrong "v" and CorruptFile on missing fields.
MetaRecord record_from_json(const nlohmann::json& j);

/// JSON lines: one header object {"kind":"header",...} followed by one
/// record per line.
void write_corpus(std::ostream& out, const std::vector<MetaRecord>& records,
                  const nlohmann::json& header);
std::vector<MetaRecord> read_corpus(std::istream& in);

struct MetaSplit {
  std::vector<MetaRecord> train;
  std::vector<MetaRecord> test;
};

/// Seeded shuffle, first ceil(p * N) records train. Throws DegenerateSplit
/// when either side is empty and InvalidArgument unless 0 < p < 1.
MetaSplit split_meta(const std::vector<MetaRecord>& records, double p, std::uint64_t seed);

/// Theoretical cost in units where one fit-and-forecast costs 1.
struct CostModel {
  double c = static_cast<double>(tuning::kDefaultTrials);  // trials per exhaustive tuning
  double unit = 1.0;                                       // random-HP and SSL inference
};

/// Per-series cost of a strategy: (n_models for the ensemble, else 1) times
/// (c for exhaustive tuning, else unit).
double per_series_cost(Strategy s, const CostModel& cm, std::size_t n_models = kNumModels);

/// Total for N series. SSL-HPT pays p*c*N to label its training fraction
/// plus (1-p)*N for inference.
double estimated_cost(Strategy s, double p, std::size_t n_series, const CostModel& cm,
                      std::size_t n_models = kNumModels);

}  // namespace tsmeta::metadata
