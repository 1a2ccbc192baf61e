#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tsmeta/params.hpp"
#include "tsmeta/series.hpp"
#include "tsmeta/smoothing.hpp"

namespace tsmeta {

struct ForecastResult {
  std::size_t horizon = 0;
  std::vector<double> point_forecasts;
  ModelId model = ModelId::Arima;
  HyperParamAssignment params;
};

namespace models {

struct ThetaState {
  std::vector<double> seasonal;  // additive indices by phase; empty when not adjusted
  double intercept = 0.0;
  double slope = 0.0;
  double ses_level = 0.0;
};

struct HoltLinearState {
  double level = 0.0;
  double trend = 0.0;
};

struct StlfState {
  std::vector<double> seasonal;  // last estimated cycle, by phase
  std::string base_method;
  double level = 0.0;  // naive / ses
  double intercept = 0.0;
  double slope = 0.0;  // linear
};

struct ArimaState {
  int p = 0, d = 0, q = 0;
  std::vector<double> ar;  // phi_1..phi_p
  std::vector<double> ma;  // theta_1..theta_q
  double mean = 0.0;       // only non-zero when d == 0
  std::vector<double> w_tail;         // last p values of the differenced, demeaned series
  std::vector<double> residual_tail;  // last q in-sample residuals
  std::vector<double> level_tails;    // last value of each differencing level 0..d-1
  double css = 0.0;
};

struct SeasonalNaiveState {
  std::vector<double> last_cycle;
};

using ModelState = std::variant<ThetaState, HoltLinearState, HoltWintersState, StlfState,
                                ArimaState, SeasonalNaiveState>;

/// A fitted candidate model; forecasts any horizon without refitting.
struct FittedModel {
  ModelId model = ModelId::Arima;
  HyperParamAssignment params;
  std::size_t train_n = 0;
  ModelState state;
};

/// Fit failures are values: pipelines count them instead of aborting.
struct FitOutcome {
  std::optional<FittedModel> model;
  std::string failure;

  bool ok() const noexcept { return model.has_value(); }
};

/// Fits `id` on the whole of `ts`. Throws Error(InvalidParams) if `params`
/// does not validate against default_space(id); every other problem
/// (too short, singular regression, non-stationary AR part) is a failure
/// value.
FitOutcome fit(ModelId id, const TimeSeries& ts, const HyperParamAssignment& params);

/// h >= 1 finite point forecasts.
ForecastResult predict(const FittedModel& fm, std::size_t h);

/// Seasonality pre-test used by the theta model: r_m > 1.645 * se with
/// Bartlett's standard error.
bool seasonality_detected(std::span<const double> y, int period);

// Radius the AR polynomial roots must stay outside of.
inline constexpr double kArRootRadius = 1.001;
inline constexpr int kNelderMeadMaxIterations = 200;

FitOutcome fit_arima(const TimeSeries& ts, const HyperParamAssignment& params);
std::vector<double> forecast_arima(const ArimaState& s, std::size_t h);

/// Largest modulus of 1/z over the roots z of 1 - c_1 z - ... - c_k z^k.
double max_inverse_root(std::span<const double> coeffs);

}  // namespace models
}  // namespace tsmeta
