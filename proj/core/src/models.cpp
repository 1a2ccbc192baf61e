#include "tsmeta/models.hpp"

#include <cmath>

#include "tsmeta/decomposition.hpp"
#include "tsmeta/error.hpp"
#include "tsmeta/features.hpp"
#include "tsmeta/stats.hpp"

namespace tsmeta::models {
namespace {

FitOutcome failure(std::string why) { return FitOutcome{std::nullopt, std::move(why)}; }

FitOutcome success(ModelId id, const TimeSeries& ts, const HyperParamAssignment& params,
                   ModelState state) {
  return FitOutcome{FittedModel{id, params, ts.size(), std::move(state)}, {}};
}

std::vector<double> seasonal_cycle(const features::Decomposition& d) {
  return std::vector<double>(d.seasonal.begin(), d.seasonal.begin() + d.period);
}

FitOutcome fit_theta(const TimeSeries& ts, const HyperParamAssignment& params) {
  const std::span<const double> y = ts.values();
  if (y.size() < 4) return failure("THETA needs at least 4 points");
  const double theta = params.number("theta");
  ThetaState s;
  std::vector<double> adjusted(y.begin(), y.end());
  if (ts.seasonal_usable() && seasonality_detected(y, ts.period())) {
    const features::Decomposition d = features::decompose(y, ts.period());
    s.seasonal = seasonal_cycle(d);
    for (std::size_t t = 0; t < y.size(); ++t) adjusted[t] -= d.seasonal[t];
  }
  const stats::LineFit line = stats::fit_line(adjusted);
  s.intercept = line.intercept;
  s.slope = line.slope;
  std::vector<double> theta_line(adjusted.size());
  for (std::size_t t = 0; t < adjusted.size(); ++t) {
    const double trend = line.intercept + line.slope * static_cast<double>(t);
    theta_line[t] = theta * adjusted[t] + (1.0 - theta) * trend;
  }
  s.ses_level = ses_filter(theta_line, optimize_ses_alpha(theta_line)).level;
  return success(ModelId::Theta, ts, params, std::move(s));
}

FitOutcome fit_holt_linear(const TimeSeries& ts, const HyperParamAssignment& params) {
  if (ts.size() < 3) return failure("HOLT_LINEAR needs at least 3 points");
  const HoltState h = holt_filter(ts.values(), params.number("alpha"), params.number("beta"));
  return success(ModelId::HoltLinear, ts, params, HoltLinearState{h.level, h.trend});
}

FitOutcome fit_holt_winters(const TimeSeries& ts, const HyperParamAssignment& params) {
  if (!ts.seasonal_usable()) return failure("HOLT_WINTERS needs n >= 2m + 1 with m > 1");
  HoltWintersState s = holt_winters_filter(ts.values(), ts.period(), params.number("alpha"),
                                           params.number("beta"), params.number("gamma"));
  if (!std::isfinite(s.sse)) return failure("HOLT_WINTERS recursion diverged");
  return success(ModelId::HoltWinters, ts, params, std::move(s));
}

FitOutcome fit_stlf(const TimeSeries& ts, const HyperParamAssignment& params) {
  if (!ts.seasonal_usable()) return failure("STLF needs n >= 2m + 1 with m > 1");
  const std::span<const double> y = ts.values();
  const features::Decomposition d = features::decompose(y, ts.period());
  std::vector<double> adjusted(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) adjusted[t] = y[t] - d.seasonal[t];

  StlfState s;
  s.seasonal = seasonal_cycle(d);
  s.base_method = params.label("base_method");
  if (s.base_method == "naive") {
    s.level = adjusted.back();
  } else if (s.base_method == "ses") {
    s.level = ses_filter(adjusted, params.number("alpha")).level;
  } else {
    const stats::LineFit line = stats::fit_line(adjusted);
    s.intercept = line.intercept;
    s.slope = line.slope;
  }
  return success(ModelId::Stlf, ts, params, std::move(s));
}

FitOutcome fit_seasonal_naive(const TimeSeries& ts, const HyperParamAssignment& params) {
  if (!ts.seasonal_usable()) return failure("SEASONAL_NAIVE needs n >= 2m + 1 with m > 1");
  const std::span<const double> y = ts.values();
  SeasonalNaiveState s;
  s.last_cycle.assign(y.end() - ts.period(), y.end());
  return success(ModelId::SeasonalNaive, ts, params, std::move(s));
}

}  // namespace

bool seasonality_detected(std::span<const double> y, int period) {
  const auto m = static_cast<std::size_t>(period);
  if (m < 2 || y.size() <= m || stats::is_constant(y)) return false;
  const std::vector<double> r = features::acf(y, m);
  double acc = 1.0;
  for (std::size_t k = 0; k + 1 < m; ++k) acc += 2.0 * r[k] * r[k];
  const double se = std::sqrt(acc / static_cast<double>(y.size()));
  return r[m - 1] > 1.645 * se;
}

FitOutcome fit(ModelId id, const TimeSeries& ts, const HyperParamAssignment& params) {
  validate(params, default_space(id));
  switch (id) {
    case ModelId::Theta: return fit_theta(ts, params);
    case ModelId::HoltLinear: return fit_holt_linear(ts, params);
    case ModelId::HoltWinters: return fit_holt_winters(ts, params);
    case ModelId::Stlf: return fit_stlf(ts, params);
    case ModelId::Arima: return fit_arima(ts, params);
    case ModelId::SeasonalNaive: return fit_seasonal_naive(ts, params);
  }
  return failure("unknown model");
}

ForecastResult predict(const FittedModel& fm, std::size_t h) {
  if (h < 1) throw Error(Errc::BadHorizon, "forecast horizon must be >= 1");
  ForecastResult out;
  out.horizon = h;
  out.model = fm.model;
  out.params = fm.params;
  out.point_forecasts.resize(h);
  const std::size_t n = fm.train_n;
  auto phase = [n](std::size_t step, std::size_t m) { return (n - 1 + step) % m; };

  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        for (std::size_t k = 1; k <= h; ++k) {
          double& v = out.point_forecasts[k - 1];
          const double t = static_cast<double>(n - 1 + k);
          if constexpr (std::is_same_v<S, ThetaState>) {
            v = 0.5 * (s.intercept + s.slope * t) + 0.5 * s.ses_level;
            if (!s.seasonal.empty()) v += s.seasonal[phase(k, s.seasonal.size())];
          } else if constexpr (std::is_same_v<S, HoltLinearState>) {
            v = s.level + static_cast<double>(k) * s.trend;
          } else if constexpr (std::is_same_v<S, HoltWintersState>) {
            v = holt_winters_forecast(s, n, k);
          } else if constexpr (std::is_same_v<S, StlfState>) {
            v = s.base_method == "linear" ? s.intercept + s.slope * t : s.level;
            v += s.seasonal[phase(k, s.seasonal.size())];
          } else if constexpr (std::is_same_v<S, SeasonalNaiveState>) {
            v = s.last_cycle[(k - 1) % s.last_cycle.size()];
          }
        }
        if constexpr (std::is_same_v<S, ArimaState>) out.point_forecasts = forecast_arima(s, h);
      },
      fm.state);
  return out;
}

}  // namespace tsmeta::models
