#include "tsmeta/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "tsmeta/error.hpp"
#include "tsmeta/features.hpp"
#include "tsmeta/metrics.hpp"
#include "tsmeta/parallel.hpp"
#include "tsmeta/rng.hpp"
#include "tsmeta/stats.hpp"

namespace tsmeta::pipeline {

ForecastResult fallback_forecast(const TimeSeries& ts, std::size_t h) {
  if (ts.seasonal_usable()) {
    models::FitOutcome fo = models::fit(ModelId::SeasonalNaive, ts, HyperParamAssignment{ModelId::SeasonalNaive, {}});
    if (fo.ok()) return models::predict(*fo.model, h);
  }
  HyperParamAssignment rw{ModelId::Arima, {{"p", std::int64_t{0}}, {"d", std::int64_t{1}}, {"q", std::int64_t{0}}}};
  models::FitOutcome fo = models::fit(ModelId::Arima, ts, rw);
  if (fo.ok()) return models::predict(*fo.model, h);
  ForecastResult r;
  r.horizon = h;
  r.model = ModelId::Arima;
  r.params = rw;
  r.point_forecasts.assign(h, ts.values().back());
  return r;
}

AutoForecast forecast_with(const TimeSeries& ts, ModelId model, const HyperParamAssignment& params, std::size_t h) {
  if (h < 1) throw Error(Errc::BadHorizon, "horizon must be at least 1");
  AutoForecast out;
  out.selected = model;
  out.selected_params = params;
  models::FitOutcome fo = models::fit(model, ts, params);
  if (fo.ok()) {
    out.forecast = models::predict(*fo.model, h);
    const auto& f = out.forecast.point_forecasts;
    if (std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); })) return out;
    fo.failure = "non-finite forecast";
  }
  out.fallback = true;
  out.failure = fo.failure;
  out.forecast = fallback_forecast(ts, h);
  return out;
}

AutoForecast forecast_auto(const TimeSeries& ts, const learners::Learners& l, std::size_t h) {
  const learners::Input x = l.standardize(features::extract_features(ts));
  const ModelId model = learners::predict_model(l.forest, x);
  return forecast_with(ts, model, learners::predict_hparams(l.net(model), x), h);
}

namespace {

std::uint64_t series_key(std::uint64_t seed, std::string_view id, std::string_view purpose) {
  return stream_key({seed, hash_string(id), hash_string(purpose)});
}

}  // namespace

std::optional<HyperParamAssignment> params_for(ModelId model, const TimeSeries& ts, const learners::Input& x,
                                               const learners::Learners& l, HptMode mode, const OnlineConfig& cfg) {
  const HyperParamSpace space = default_space(model);
  switch (mode) {
    case HptMode::Exhaustive: {
      const SplitConfig split = metadata::split_for(ts, cfg.tuning_horizon);
      const tuning::SearchResult r = tuning::random_search(model, ts, space, cfg.trials, cfg.seed, split);
      if (r.best.failed()) return std::nullopt;
      return r.best.assignment;
    }
    case HptMode::RandomHp: {
      KeyedRng rng(stream_key({series_key(cfg.seed, ts.id(), "random_hp"), model_index(model)}));
      return tuning::draw_assignment(space, rng);
    }
    case HptMode::SslHpt:
      return learners::predict_hparams(l.net(model), x);
  }
  return std::nullopt;
}

std::vector<double> pointwise_median(const std::vector<std::vector<double>>& forecasts) {
  if (forecasts.empty()) return {};
  const std::size_t h = forecasts.front().size();
  std::vector<double> out(h), column;
  for (std::size_t t = 0; t < h; ++t) {
    column.clear();
    for (const auto& f : forecasts) column.push_back(f.at(t));
    out[t] = stats::median(column);
  }
  return out;
}

EnsembleForecast forecast_ensemble(const TimeSeries& ts, const learners::Learners& l, std::size_t h, HptMode mode,
                                   const OnlineConfig& cfg) {
  if (h < 1) throw Error(Errc::BadHorizon, "horizon must be at least 1");
  const learners::Input x = l.standardize(features::extract_features(ts));
  EnsembleForecast out;
  std::vector<std::vector<double>> surviving;
  for (ModelId m : kAllModels) {
    const auto params = params_for(m, ts, x, l, mode, cfg);
    if (!params) {
      out.failures.emplace_back(m, "every tuning trial failed");
      continue;
    }
    models::FitOutcome fo = models::fit(m, ts, *params);
    if (!fo.ok()) {
      out.failures.emplace_back(m, fo.failure);
      continue;
    }
    ForecastResult fr = models::predict(*fo.model, h);
    if (!std::all_of(fr.point_forecasts.begin(), fr.point_forecasts.end(), [](double v) { return std::isfinite(v); })) {
      out.failures.emplace_back(m, "non-finite forecast");
      continue;
    }
    surviving.push_back(fr.point_forecasts);
    out.members.push_back(std::move(fr));
  }
  if (surviving.empty()) throw Error(Errc::AllModelsFailed, "no model could be fitted to " + ts.id());
  out.point_forecasts = pointwise_median(surviving);
  return out;
}

namespace {

std::size_t strategy_index(Strategy s) {
  return static_cast<std::size_t>(std::find(kAllStrategies.begin(), kAllStrategies.end(), s) - kAllStrategies.begin());
}

// Holdout forecast of one (model, params) candidate; empty on failure.
std::optional<std::vector<double>> candidate_forecast(ModelId m, const std::optional<HyperParamAssignment>& params,
                                                      const TimeSeries& train, std::size_t h) {
  if (!params) return std::nullopt;
  models::FitOutcome fo = models::fit(m, train, *params);
  if (!fo.ok()) return std::nullopt;
  std::vector<double> f = models::predict(*fo.model, h).point_forecasts;
  if (!std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); })) return std::nullopt;
  return f;
}

SeriesOutcome evaluate_series(const metadata::MetaRecord& rec, const TimeSeries& ts, const learners::Learners& l,
                              const EvalConfig& cfg) {
  const SplitConfig split = metadata::split_for(ts, cfg.horizon);
  const auto [train, test] = train_test_split(ts, split);
  const std::size_t h = test.size();
  const learners::Input x = l.standardize(rec.features);

  // candidates[hpt][model]
  std::array<std::array<std::optional<std::vector<double>>, kNumModels>, 3> candidates;
  for (HptMode mode : {HptMode::Exhaustive, HptMode::RandomHp, HptMode::SslHpt}) {
    for (ModelId m : kAllModels) {
      std::optional<HyperParamAssignment> params;
      if (mode == HptMode::Exhaustive) {
        // The offline tuning already ran random_search on this exact holdout.
        if (!rec.entry(m).failed()) params = rec.entry(m).best_params;
      } else {
        params = params_for(m, train, x, l, mode, OnlineConfig{cfg.seed, 0, std::nullopt});
      }
      candidates[static_cast<std::size_t>(mode)][model_index(m)] = candidate_forecast(m, params, train, h);
    }
  }

  KeyedRng pick(series_key(cfg.seed, rec.series_id, "random_model"));
  const ModelId random_model = kAllModels[pick.below(kNumModels)];
  const ModelId ssl_model = learners::predict_model(l.forest, x);
  const double fallback_mape = mape(test.values(), fallback_forecast(train, h).point_forecasts);

  SeriesOutcome out;
  out.id = rec.series_id;
  for (Strategy s : kAllStrategies) {
    const std::size_t i = strategy_index(s);
    const auto& row = candidates[static_cast<std::size_t>(s.hpt)];
    std::optional<std::vector<double>> forecast;
    switch (s.selection) {
      case ModelSelection::Ensemble: {
        std::vector<std::vector<double>> members;
        out.model[i] = ModelId::Arima;
        for (ModelId m : kAllModels) {
          if (!row[model_index(m)]) continue;
          if (members.empty()) out.model[i] = m;
          members.push_back(*row[model_index(m)]);
        }
        if (!members.empty()) forecast = pointwise_median(members);
        break;
      }
      case ModelSelection::RandomModel:
        out.model[i] = random_model;
        forecast = row[model_index(random_model)];
        break;
      case ModelSelection::SslMs:
        out.model[i] = ssl_model;
        forecast = row[model_index(ssl_model)];
        break;
    }
    out.failed[i] = !forecast.has_value();
    out.mape[i] = forecast ? mape(test.values(), *forecast) : fallback_mape;
  }
  return out;
}

std::optional<double> change_pct(double row, double base) {
  if (base == 0.0) return row == 0.0 ? std::optional<double>(0.0) : std::nullopt;
  return (row - base) / base * 100.0;
}

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

}  // namespace

EvalReport evaluate_methods(const std::vector<metadata::MetaRecord>& test, const std::vector<TimeSeries>& series,
                            const learners::Learners& l, const EvalConfig& cfg, std::size_t jobs) {
  const std::set<std::string> trained(l.train_ids.begin(), l.train_ids.end());
  for (const auto& r : test) {
    if (trained.count(r.series_id) != 0) {
      throw Error(Errc::OverlapError, "series '" + r.series_id + "' is in both the learner training set and the test set");
    }
  }
  std::map<std::string_view, const TimeSeries*> by_id;
  for (const TimeSeries& ts : series) by_id[ts.id()] = &ts;
  for (const auto& r : test) {
    if (by_id.count(r.series_id) == 0) throw Error(Errc::InvalidArgument, "no series data for '" + r.series_id + "'");
  }

  EvalReport report;
  report.corpus_size = test.size();
  report.per_series.resize(test.size());
  parallel_for(test.size(), jobs, [&](std::size_t i) {
    report.per_series[i] = evaluate_series(test[i], *by_id.at(test[i].series_id), l, cfg);
  });

  for (Strategy s : kAllStrategies) {
    const std::size_t i = strategy_index(s);
    StrategyRow row;
    row.strategy = s;
    row.n_series = test.size();
    std::vector<double> values;
    for (const SeriesOutcome& o : report.per_series) {
      values.push_back(o.mape[i]);
      if (o.failed[i]) ++row.n_fails;
    }
    if (!values.empty()) {
      row.avg_mape = stats::mean(values);
      row.median_mape = stats::median(values);
    }
    row.runtime_units = metadata::per_series_cost(s, cfg.cost);
    row.total_cost_units = test.empty() ? 0.0 : metadata::estimated_cost(s, cfg.p, test.size(), cfg.cost);
    report.rows.push_back(row);
  }
  const StrategyRow base = report.rows[strategy_index(kBaselineStrategy)];
  for (StrategyRow& row : report.rows) {
    row.avg_mape_change_pct = change_pct(row.avg_mape, base.avg_mape);
    row.median_mape_change_pct = change_pct(row.median_mape, base.median_mape);
  }
  return report;
}

nlohmann::json report_to_json(const EvalReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const StrategyRow& row : r.rows) {
    rows.push_back({
        {"method", strategy_name(row.strategy)},
        {"model_selection", selection_name(row.strategy.selection)},
        {"hpt", hpt_name(row.strategy.hpt)},
        {"avg_mape", row.avg_mape},
        {"avg_mape_change_pct", opt_json(row.avg_mape_change_pct)},
        {"median_mape", row.median_mape},
        {"median_mape_change_pct", opt_json(row.median_mape_change_pct)},
        {"n_fails", row.n_fails},
        {"n_series", row.n_series},
        {"runtime_units", row.runtime_units},
        {"total_cost_units", row.total_cost_units},
    });
  }
  nlohmann::json per_series = nlohmann::json::array();
  for (const SeriesOutcome& o : r.per_series) {
    nlohmann::json models = nlohmann::json::array();
    for (ModelId m : o.model) models.push_back(model_name(m));
    per_series.push_back({{"id", o.id}, {"mape", o.mape}, {"failed", o.failed}, {"model", models}});
  }
  return {{"corpus_size", r.corpus_size}, {"rows", rows}, {"per_series", per_series}};
}

std::string report_to_csv(const EvalReport& r) {
  std::ostringstream out;
  out.precision(17);
  auto opt = [](const std::optional<double>& v) {
    std::ostringstream s;
    s.precision(17);
    if (v) s << *v;
    return s.str();
  };
  out << "method,avg_mape,avg_mape_change_pct,median_mape,median_mape_change_pct,n_fails,runtime_units\n";
  for (const StrategyRow& row : r.rows) {
    out << strategy_name(row.strategy) << ',' << row.avg_mape << ',' << opt(row.avg_mape_change_pct) << ','
        << row.median_mape << ',' << opt(row.median_mape_change_pct) << ',' << row.n_fails << ','
        << row.runtime_units << '\n';
  }
  return out.str();
}

ConsistencyResult consistency_eval(const TimeSeries& ts, const std::vector<std::size_t>& checkpoints,
                                   const learners::Learners& l) {
  if (checkpoints.empty()) throw Error(Errc::BadCheckpoint, "no checkpoints");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const std::size_t c = checkpoints[i];
    if (c < kMinSeriesLength || c > ts.size()) {
      throw Error(Errc::BadCheckpoint, "checkpoint " + std::to_string(c) + " outside [" +
                                           std::to_string(kMinSeriesLength) + ", " + std::to_string(ts.size()) + "]");
    }
    if (i > 0 && c < checkpoints[i - 1]) throw Error(Errc::BadCheckpoint, "checkpoints must not decrease");
  }
  ConsistencyResult r;
  r.checkpoints = checkpoints;
  for (std::size_t c : checkpoints) {
    const learners::Input x = l.standardize(features::extract_features(ts.prefix(c)));
    r.labels.push_back(learners::predict_model(l.forest, x));
  }
  const std::size_t k = checkpoints.size();
  r.matrix.assign(k, std::vector<std::optional<double>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) r.matrix[i][j] = r.labels[i] != r.labels[j] ? 1.0 : 0.0;
  }
  return r;
}

std::vector<std::vector<std::optional<double>>> change_rate(const std::vector<ConsistencyResult>& results) {
  if (results.empty()) return {};
  const std::size_t k = results.front().checkpoints.size();
  std::vector<std::vector<std::optional<double>>> pct(k, std::vector<std::optional<double>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      double sum = 0.0;
      for (const ConsistencyResult& r : results) sum += *r.matrix[i][j];
      pct[i][j] = 100.0 * sum / static_cast<double>(results.size());
    }
  }
  return pct;
}

CorpusConsistency consistency_corpus(const std::vector<TimeSeries>& series, const std::vector<std::size_t>& checkpoints,
                                     const learners::Learners& l, std::size_t jobs) {
  if (checkpoints.empty()) throw Error(Errc::BadCheckpoint, "no checkpoints");
  CorpusConsistency out;
  out.checkpoints = checkpoints;
  std::vector<const TimeSeries*> usable;
  for (const TimeSeries& ts : series) {
    if (ts.size() < checkpoints.back()) {
      out.skipped.push_back(ts.id());
    } else {
      usable.push_back(&ts);
    }
  }
  out.per_series.resize(usable.size());
  parallel_for(usable.size(), jobs, [&](std::size_t i) { out.per_series[i] = consistency_eval(*usable[i], checkpoints, l); });
  out.change_pct = change_rate(out.per_series);
  return out;
}

}  // namespace tsmeta::pipeline
