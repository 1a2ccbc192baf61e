#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsmeta/learners.hpp"
#include "tsmeta/metadata.hpp"
#include "tsmeta/models.hpp"
#include "tsmeta/strategy.hpp"

namespace tsmeta::pipeline {

/// SEASONAL_NAIVE when the series allows it, otherwise ARIMA(0,1,0), which
/// repeats the last value.
ForecastResult fallback_forecast(const TimeSeries& ts, std::size_t h);

struct AutoForecast {
  ForecastResult forecast;
  ModelId selected = ModelId::Arima;  // what the learners asked for
  HyperParamAssignment selected_params;
  bool fallback = false;
  std::string failure;  // why the selected fit failed
};

/// Fits (model, params) on ts and forecasts h steps, falling back on failure.
AutoForecast forecast_with(const TimeSeries& ts, ModelId model, const HyperParamAssignment& params, std::size_t h);

/// features -> standardize -> classifier -> that model's network -> fit ->
/// forecast.
AutoForecast forecast_auto(const TimeSeries& ts, const learners::Learners& l, std::size_t h);

struct OnlineConfig {
  std::uint64_t seed = 0;
  std::size_t trials = tuning::kDefaultTrials;
  std::optional<std::size_t> tuning_horizon;  // holdout for exhaustive tuning
};

/// Parameters for `model` under one tuning mode. Exhaustive tuning runs
/// random_search on ts; empty when every trial failed.
std::optional<HyperParamAssignment> params_for(ModelId model, const TimeSeries& ts, const learners::Input& x,
                                               const learners::Learners& l, HptMode mode, const OnlineConfig& cfg);

/// Pointwise median; even counts average the middle two.
std::vector<double> pointwise_median(const std::vector<std::vector<double>>& forecasts);

struct EnsembleForecast {
  std::vector<double> point_forecasts;
  std::vector<ForecastResult> members;  // surviving models, in ModelId order
  std::vector<std::pair<ModelId, std::string>> failures;
};

/// Throws Error(AllModelsFailed) when no model fits.
EnsembleForecast forecast_ensemble(const TimeSeries& ts, const learners::Learners& l, std::size_t h, HptMode mode,
                                   const OnlineConfig& cfg = {});

struct EvalConfig {
  std::uint64_t seed = 0;
  std::optional<std::size_t> horizon;  // must match the corpus build
  double p = 0.75;                     // meta train fraction, for total cost
  metadata::CostModel cost;
};

struct StrategyRow {
  Strategy strategy;
  double avg_mape = 0.0;
  double median_mape = 0.0;
  std::optional<double> avg_mape_change_pct;  // vs. the baseline row; empty if undefined
  std::optional<double> median_mape_change_pct;
  std::size_t n_fails = 0;
  std::size_t n_series = 0;
  double runtime_units = 0.0;      // per series
  double total_cost_units = 0.0;   // estimated_cost over the corpus
};

struct SeriesOutcome {
  std::string id;
  std::array<double, 9> mape{};
  std::array<bool, 9> failed{};
  std::array<ModelId, 9> model{};  // chosen model (first member for the ensemble)
};

struct EvalReport {
  std::vector<StrategyRow> rows;  // kAllStrategies order
  std::size_t corpus_size = 0;
  std::vector<SeriesOutcome> per_series;  // test-record order
};

/// Runs the nine strategies on every test record. `series` must contain a
/// series for every record id. Throws Error(OverlapError) when a test id was
/// used to train the learners.
EvalReport evaluate_methods(const std::vector<metadata::MetaRecord>& test, const std::vector<TimeSeries>& series,
                            const learners::Learners& l, const EvalConfig& cfg, std::size_t jobs = 1);

nlohmann::json report_to_json(const EvalReport& r);
/// Header: method,avg_mape,avg_mape_change_pct,median_mape,median_mape_change_pct,n_fails,runtime_units
std::string report_to_csv(const EvalReport& r);

struct ConsistencyResult {
  std::vector<std::size_t> checkpoints;
  std::vector<ModelId> labels;
  /// (i, j) for i < j: 1 when the label changed between checkpoints i and j.
  std::vector<std::vector<std::optional<double>>> matrix;
};

/// Throws Error(BadCheckpoint) unless checkpoints are non-empty,
/// non-decreasing, at least kMinSeriesLength and at most ts.size().
ConsistencyResult consistency_eval(const TimeSeries& ts, const std::vector<std::size_t>& checkpoints,
                                   const learners::Learners& l);

struct CorpusConsistency {
  std::vector<std::size_t> checkpoints;
  std::vector<std::vector<std::optional<double>>> change_pct;  // upper triangle
  std::vector<ConsistencyResult> per_series;
  std::vector<std::string> skipped;  // series shorter than the last checkpoint
};

CorpusConsistency consistency_corpus(const std::vector<TimeSeries>& series, const std::vector<std::size_t>& checkpoints,
                                     const learners::Learners& l, std::size_t jobs = 1);

/// Averages indicator matrices into percentages.
std::vector<std::vector<std::optional<double>>> change_rate(const std::vector<ConsistencyResult>& results);

}  // namespace tsmeta::pipeline
