#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "oracles.hpp"
#include "tsmeta/csv.hpp"
#include "tsmeta/error.hpp"
#include "tsmeta/metrics.hpp"
#include "tsmeta/series.hpp"

using namespace tsmeta;

namespace {

std::vector<RawPoint> points(std::vector<std::int64_t> t, std::vector<double> v) {
  std::vector<RawPoint> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back({t[i], v[i]});
  return out;
}

std::vector<RawPoint> ramp_points(std::size_t n) {
  std::vector<RawPoint> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({static_cast<std::int64_t>(i), static_cast<double>(i + 1)});
  return out;
}

template <typename F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected tsmeta::Error";
  return Errc::InvalidArgument;
}

}  // namespace

TEST(ValidateSeries, WellFormedTenPoints) {
  const TimeSeries ts = validate_series("a", ramp_points(10), 1);
  EXPECT_EQ(ts.size(), 10u);
  EXPECT_FALSE(ts.seasonal_usable());
  EXPECT_EQ(ts.values()[9], 10.0);
}

TEST(ValidateSeries, DuplicateTimestamp) {
  EXPECT_EQ(error_of([] { validate_series("a", points({0, 1, 1, 2}, {1, 2, 3, 4}), 1); }), Errc::DuplicateTimestamp);
}

TEST(ValidateSeries, SeasonalUsableThreshold) {
  EXPECT_TRUE(validate_series("a", ramp_points(9), 4).seasonal_usable());
  EXPECT_FALSE(validate_series("a", ramp_points(8), 4).seasonal_usable());
}

TEST(ValidateSeries, Errors) {
  EXPECT_EQ(error_of([] { validate_series("a", ramp_points(4), 1); }), Errc::TooShort);
  EXPECT_EQ(error_of([] { validate_series("a", ramp_points(10), 0); }), Errc::BadPeriod);
  EXPECT_EQ(error_of([] { validate_series("a", points({0, 1, 2, 4, 5}, {1, 2, 3, 4, 5}), 1); }),
            Errc::NonUniformSpacing);
  EXPECT_EQ(error_of([] {
              validate_series("a", points({0, 1, 2, 3, 4}, {1, std::numeric_limits<double>::quiet_NaN(), 3, 4, 5}), 1);
            }),
            Errc::NonFiniteValue);
}

TEST(ValidateSeries, Idempotent) {
  const TimeSeries ts = validate_series("a", points({10, 20, 30, 40, 50, 60}, {3, 1, 4, 1, 5, 9}), 2);
  std::vector<RawPoint> again;
  for (std::size_t i = 0; i < ts.size(); ++i) again.push_back({ts.timestamps()[i], ts.values()[i]});
  EXPECT_EQ(validate_series("a", again, 2), ts);
}

TEST(TrainTestSplit, Lengths) {
  const TimeSeries ts = oracle::series(oracle::white_noise(100, 1));
  const auto [train, test] = train_test_split(ts, 12);
  EXPECT_EQ(train.size(), 88u);
  EXPECT_EQ(test.size(), 12u);
}

TEST(TrainTestSplit, HorizonEqualToLengthFails) {
  const TimeSeries ts = oracle::series(oracle::white_noise(20, 1));
  EXPECT_EQ(error_of([&] { train_test_split(ts, 20); }), Errc::BadHorizon);
  EXPECT_EQ(error_of([&] { train_test_split(ts, 0); }), Errc::BadHorizon);
}

TEST(TrainTestSplit, ShortestSeries) {
  const TimeSeries ts = oracle::series({1, 2, 3, 4, 5});
  const auto [train, test] = train_test_split(ts, 1);
  EXPECT_EQ(train.size(), 4u);
  EXPECT_EQ(test.size(), 1u);
}

TEST(TrainTestSplit, PartitionPreservesValuesBitwise) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto y = oracle::white_noise(30 + seed, seed);
    const TimeSeries ts = oracle::series(y);
    const auto [train, test] = train_test_split(ts, 1 + seed % 10);
    ASSERT_EQ(train.size() + test.size(), ts.size());
    std::vector<double> joined(train.values().begin(), train.values().end());
    joined.insert(joined.end(), test.values().begin(), test.values().end());
    EXPECT_EQ(0, std::memcmp(joined.data(), y.data(), y.size() * sizeof(double)));
  }
}

TEST(DefaultHorizon, QuarterCappedAtTwoPeriods) {
  EXPECT_EQ(default_horizon(100, 12), 24u);
  EXPECT_EQ(default_horizon(40, 12), 10u);
  EXPECT_EQ(default_horizon(5, 1), 1u);
}

TEST(Mape, Examples) {
  const std::vector<double> a{100, 200}, f{110, 180};
  EXPECT_NEAR(mape(a, f), 0.1, 1e-15);
  EXPECT_EQ(mape(a, a), 0.0);
  EXPECT_EQ(error_of([] { mape(std::vector<double>{1, 0}, std::vector<double>{1, 1}); }), Errc::ZeroActual);
  EXPECT_EQ(error_of([] { mape(std::vector<double>{1, 2}, std::vector<double>{1}); }), Errc::LengthMismatch);
}

TEST(Mape, ScaleInvariant) {
  const auto a = oracle::white_noise(50, 7), f = oracle::white_noise(50, 8);
  std::vector<double> aa, ff;
  for (double v : a) aa.push_back(v + 10);
  for (double v : f) ff.push_back(v + 10);
  const double base = mape(aa, ff);
  for (double k : {-3.0, 0.001, 7.5, 1e6}) {
    std::vector<double> ka, kf;
    for (double v : aa) ka.push_back(k * v);
    for (double v : ff) kf.push_back(k * v);
    EXPECT_NEAR(mape(ka, kf), base, 1e-12 * base);
  }
}

TEST(Csv, IntegerTimestamps) {
  std::istringstream in("timestamp,value\n0,1.5\n1,2.5\n2,3.5\n3,4.5\n4,5.5\n");
  const TimeSeries ts = parse_series_csv(in, "x", 1);
  EXPECT_EQ(ts.size(), 5u);
  EXPECT_EQ(ts.values()[4], 5.5);
}

TEST(Csv, IsoMonthlyTimestamps) {
  std::istringstream in(
      "timestamp,value\n2020-01-01,1\n2020-02-01,2\n2020-03-01,3\n2020-04-01,4\n2020-05-01,5\n2020-06-01,6\n");
  const TimeSeries ts = parse_series_csv(in, "m", 12);
  EXPECT_EQ(ts.size(), 6u);
}

TEST(Csv, IsoDailyRoundTrip) {
  std::ostringstream body;
  body << "timestamp,value\n";
  for (int d = 1; d <= 9; ++d) body << "2021-03-0" << d << "T00:00:00Z," << d * 1.25 << '\n';
  std::istringstream in(body.str());
  const TimeSeries ts = parse_series_csv(in, "d", 1);
  std::ostringstream out;
  write_series_csv(out, ts);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_series_csv(back, "d", 1), ts);
}

TEST(Csv, Malformed) {
  std::istringstream bad_header("time,value\n0,1\n");
  EXPECT_EQ(error_of([&] { parse_series_csv(bad_header, "x", 1); }), Errc::ParseError);
  std::istringstream mixed("timestamp,value\n0,1\n2020-01-01,2\n2,3\n3,4\n4,5\n");
  EXPECT_EQ(error_of([&] { parse_series_csv(mixed, "x", 1); }), Errc::ParseError);
  std::istringstream junk("timestamp,value\n0,abc\n1,2\n2,3\n3,4\n4,5\n");
  EXPECT_EQ(error_of([&] { parse_series_csv(junk, "x", 1); }), Errc::ParseError);
}

TEST(Iso8601, ParseAndFormat) {
  EXPECT_EQ(parse_iso8601("1970-01-01"), 0);
  EXPECT_EQ(parse_iso8601("1970-01-02T00:00:01Z"), 86401);
  EXPECT_FALSE(parse_iso8601("2020-13-01").has_value());
  EXPECT_EQ(format_iso8601(86401), "1970-01-02T00:00:01");
}
