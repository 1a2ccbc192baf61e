#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsmeta/error.hpp"
#include "tsmeta/models.hpp"

using namespace tsmeta;

namespace {

HyperParamAssignment assign(ModelId id, std::map<std::string, ParamValue, std::less<>> v = {}) {
  return HyperParamAssignment{id, std::move(v)};
}
HyperParamAssignment arima(std::int64_t p, std::int64_t d, std::int64_t q) {
  return assign(ModelId::Arima, {{"p", p}, {"d", d}, {"q", q}});
}
HyperParamAssignment holt(double a, double b) { return assign(ModelId::HoltLinear, {{"alpha", a}, {"beta", b}}); }
HyperParamAssignment hw(double a, double b, double g) {
  return assign(ModelId::HoltWinters, {{"alpha", a}, {"beta", b}, {"gamma", g}});
}
HyperParamAssignment stlf(std::string base, double a) {
  return assign(ModelId::Stlf, {{"base_method", std::move(base)}, {"alpha", a}});
}
HyperParamAssignment theta(double t) { return assign(ModelId::Theta, {{"theta", t}}); }

std::vector<double> forecast(ModelId id, const TimeSeries& ts, const HyperParamAssignment& a, std::size_t h) {
  const auto out = models::fit(id, ts, a);
  if (!out.ok()) throw std::runtime_error("fit failed: " + out.failure);
  return models::predict(*out.model, h).point_forecasts;
}

}  // namespace

TEST(Arima, RandomWalkForecastIsLastValue) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto y = oracle::random_walk(80, seed);
    for (double f : forecast(ModelId::Arima, oracle::series(y), arima(0, 1, 0), 7)) EXPECT_NEAR(f, y.back(), 1e-9);
  }
}

TEST(Arima, Ar1CoefficientRecovered) {
  const auto y = oracle::ar1(1000, 0.7, 2);
  const auto out = models::fit(ModelId::Arima, oracle::series(y), arima(1, 0, 0));
  ASSERT_TRUE(out.ok()) << out.failure;
  const auto& s = std::get<models::ArimaState>(out.model->state);
  ASSERT_EQ(s.ar.size(), 1u);
  EXPECT_NEAR(s.ar[0], 0.7, 0.06);
}

TEST(Arima, FittedArPartStaysOutsideRootGuard) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 60; ++i) {
    const auto y = i % 2 ? oracle::ar1(60, 0.95, gen()) : oracle::random_walk(60, gen());
    const auto p = static_cast<std::int64_t>(gen() % 4);
    const auto q = static_cast<std::int64_t>(gen() % 4);
    const auto out = models::fit(ModelId::Arima, oracle::series(y), arima(p, 0, q));
    if (!out.ok()) continue;
    const auto& s = std::get<models::ArimaState>(out.model->state);
    if (!s.ar.empty()) EXPECT_LT(models::max_inverse_root(s.ar), 1.0 / models::kArRootRadius);
  }
}

TEST(Arima, MaxInverseRootExamples) {
  EXPECT_NEAR(models::max_inverse_root(std::vector<double>{0.5}), 0.5, 1e-12);
  EXPECT_NEAR(models::max_inverse_root(std::vector<double>{1.5}), 1.5, 1e-12);
  // (1 - 0.5z)(1 - 0.9z) = 1 - 1.4z + 0.45z^2
  EXPECT_NEAR(models::max_inverse_root(std::vector<double>{1.4, -0.45}), 0.9, 1e-9);
  // Complex pair with modulus sqrt(0.81).
  EXPECT_NEAR(models::max_inverse_root(std::vector<double>{0.0, -0.81}), 0.9, 1e-9);
}

TEST(Arima, TooShortIsFailureValue) {
  const auto out = models::fit(ModelId::Arima, oracle::series(oracle::white_noise(10, 1)), arima(3, 2, 3));
  EXPECT_FALSE(out.ok());
  EXPECT_FALSE(out.failure.empty());
}

TEST(SeasonalNaive, RepeatsLastCycle) {
  const auto ts = oracle::series({9, 9, 9, 1, 2, 3, 4, 5, 6, 7, 8}, 4);
  EXPECT_EQ(forecast(ModelId::SeasonalNaive, ts, assign(ModelId::SeasonalNaive), 6),
            (std::vector<double>{5, 6, 7, 8, 5, 6}));
}

TEST(SeasonalNaive, RequiresUsableSeason) {
  EXPECT_FALSE(models::fit(ModelId::SeasonalNaive, oracle::series({1, 2, 3, 4, 5, 6}, 4),
                           assign(ModelId::SeasonalNaive))
                   .ok());
}

TEST(HoltWinters, ExactGeneratorContinuation) {
  const std::vector<double> s{1.0, -2.0, 0.5, 0.5};
  const auto y = oracle::tiled(48, s, 0.5, 10.0);
  const auto f = forecast(ModelId::HoltWinters, oracle::series(y, 4), hw(0.5, 0.1, 0.1), 8);
  const auto cont = oracle::tiled(56, s, 0.5, 10.0);
  for (std::size_t h = 0; h < 8; ++h) EXPECT_NEAR(f[h], cont[48 + h], 0.02 * std::abs(cont[48 + h]));
}

TEST(Theta, LinearContinuation) {
  std::vector<double> y(60);
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = 2.0 + 3.0 * t;
  const auto f = forecast(ModelId::Theta, oracle::series(y), theta(2.0), 5);
  for (std::size_t h = 1; h <= 5; ++h) {
    const double truth = 2.0 + 3.0 * (59 + h);
    EXPECT_NEAR(f[h - 1], truth, 0.05 * truth);
  }
}

TEST(HoltLinear, ConstantSeriesIsFixedPoint) {
  const auto f = forecast(ModelId::HoltLinear, oracle::series(std::vector<double>(30, 7.5)), holt(0.3, 0.05), 10);
  for (double v : f) EXPECT_NEAR(v, 7.5, 1e-6);
}

TEST(HoltLinear, LineIsFixedPoint) {
  std::vector<double> y(30);
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = 1.0 + 2.0 * t;
  const auto f = forecast(ModelId::HoltLinear, oracle::series(y), holt(0.6, 0.2), 4);
  for (std::size_t h = 1; h <= 4; ++h) EXPECT_NEAR(f[h - 1], 1.0 + 2.0 * (29 + h), 1e-9);
}

TEST(Stlf, NaiveOnTiledPatternContinuesTile) {
  const std::vector<double> pat{4, 1, -3, 0, 2, -4};
  const auto y = oracle::tiled(36, pat, 0.0, 50.0);
  const auto f = forecast(ModelId::Stlf, oracle::series(y, 6), stlf("naive", 0.5), 9);
  for (std::size_t h = 0; h < 9; ++h) EXPECT_NEAR(f[h], 50.0 + pat[(36 + h) % 6], 1e-6);
}

TEST(Stlf, AllBaseMethodsFit) {
  const auto ts = oracle::series(oracle::tiled(48, {1, 2, 3}, 0.2, 10), 3);
  for (const char* base : {"naive", "ses", "linear"}) {
    const auto f = forecast(ModelId::Stlf, ts, stlf(base, 0.4), 6);
    EXPECT_EQ(f.size(), 6u);
  }
}

TEST(Contract, InvalidParamsThrow) {
  const auto ts = oracle::series(oracle::white_noise(40, 3));
  EXPECT_THROW(models::fit(ModelId::HoltLinear, ts, holt(1.5, 0.1)), Error);
  EXPECT_THROW(models::fit(ModelId::Arima, ts, assign(ModelId::Arima, {{"p", std::int64_t{1}}})), Error);
  EXPECT_THROW(models::fit(ModelId::Theta, ts, holt(0.5, 0.5)), Error);
}

TEST(Contract, DeterministicFiniteAndRepeatable) {
  auto y = oracle::tiled(60, {3, -1, -2, 0}, 0.1, 20);
  const auto noise = oracle::white_noise(60, 4, 0.3);
  for (std::size_t t = 0; t < y.size(); ++t) y[t] += noise[t];
  const auto ts = oracle::series(y, 4);
  const std::vector<std::pair<ModelId, HyperParamAssignment>> cases = {
      {ModelId::Theta, theta(1.5)},         {ModelId::HoltLinear, holt(0.4, 0.2)},
      {ModelId::HoltWinters, hw(0.3, 0.1, 0.2)}, {ModelId::Stlf, stlf("ses", 0.3)},
      {ModelId::Arima, arima(1, 1, 1)},     {ModelId::SeasonalNaive, assign(ModelId::SeasonalNaive)}};
  for (const auto& [id, a] : cases) {
    const auto fit1 = models::fit(id, ts, a);
    const auto fit2 = models::fit(id, ts, a);
    ASSERT_TRUE(fit1.ok()) << model_name(id) << ": " << fit1.failure;
    const auto p1 = models::predict(*fit1.model, 12);
    EXPECT_EQ(p1.point_forecasts, models::predict(*fit1.model, 12).point_forecasts);
    EXPECT_EQ(p1.point_forecasts, models::predict(*fit2.model, 12).point_forecasts);
    EXPECT_EQ(p1.horizon, 12u);
    EXPECT_EQ(p1.model, id);
    for (double v : p1.point_forecasts) EXPECT_TRUE(std::isfinite(v));
  }
}

TEST(Contract, ShiftEquivariance) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 10; ++trial) {
    auto y = oracle::tiled(48, {2, -1, 0.5, -1.5}, 0.2, 30);
    const auto noise = oracle::white_noise(48, gen(), 0.5);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] += noise[t];
    const double c = 1000.0 * std::uniform_real_distribution<double>(-1, 1)(gen);
    std::vector<double> shifted(y);
    for (double& v : shifted) v += c;
    const std::vector<std::pair<ModelId, HyperParamAssignment>> cases = {
        {ModelId::Theta, theta(2.0)},          {ModelId::HoltLinear, holt(0.4, 0.2)},
        {ModelId::HoltWinters, hw(0.3, 0.1, 0.2)}, {ModelId::Stlf, stlf("linear", 0.3)},
        {ModelId::Stlf, stlf("ses", 0.7)},     {ModelId::SeasonalNaive, assign(ModelId::SeasonalNaive)}};
    for (const auto& [id, a] : cases) {
      const auto f0 = forecast(id, oracle::series(y, 4), a, 8);
      const auto f1 = forecast(id, oracle::series(shifted, 4), a, 8);
      for (std::size_t h = 0; h < 8; ++h) EXPECT_NEAR(f1[h], f0[h] + c, 1e-6) << model_name(id);
    }
  }
}

TEST(Theta, SeasonalityPreTest) {
  EXPECT_TRUE(models::seasonality_detected(oracle::tiled(48, {3, -1, -2, 0}), 4));
  EXPECT_FALSE(models::seasonality_detected(oracle::white_noise(48, 1), 4));
}
