#include "tsmeta/series.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tsmeta/error.hpp"

namespace tsmeta {
namespace {

using namespace std::chrono;

struct CalendarParts {
  int months = 0;  // months since year 0
  unsigned day = 0;
  std::int64_t second_of_day = 0;
};

CalendarParts calendar_parts(std::int64_t epoch_seconds) {
  const auto tp = sys_seconds{seconds{epoch_seconds}};
  const auto day_point = floor<days>(tp);
  const year_month_day ymd{day_point};
  CalendarParts parts;
  parts.months = static_cast<int>(ymd.year()) * 12 + static_cast<int>(unsigned(ymd.month())) - 1;
  parts.day = unsigned(ymd.day());
  parts.second_of_day = (tp - day_point).count();
  return parts;
}

bool calendar_monthly(std::span<const RawPoint> raw) {
  const CalendarParts first = calendar_parts(raw[0].time);
  const CalendarParts second = calendar_parts(raw[1].time);
  const int step = second.months - first.months;
  if (step <= 0) return false;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const CalendarParts p = calendar_parts(raw[i].time);
    if (p.day != first.day || p.second_of_day != first.second_of_day) return false;
    if (p.months - first.months != step * static_cast<int>(i)) return false;
  }
  return true;
}

}  // namespace

TimeSeries validate_series(std::string id, std::span<const RawPoint> raw, int period,
                           TimeKind kind) {
  if (period < 1) throw Error(Errc::BadPeriod, "period must be >= 1, got " + std::to_string(period));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i].value)) {
      throw Error(Errc::NonFiniteValue, "non-finite value at position " + std::to_string(i));
    }
  }
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i].time == raw[i - 1].time) {
      throw Error(Errc::DuplicateTimestamp,
                  "duplicate timestamp " + std::to_string(raw[i].time));
    }
  }
  if (raw.size() < kMinSeriesLength) {
    throw Error(Errc::TooShort, "series '" + id + "' has " + std::to_string(raw.size()) +
                                    " points, need at least " +
                                    std::to_string(kMinSeriesLength));
  }
  const std::int64_t step = raw[1].time - raw[0].time;
  bool uniform = step > 0;
  for (std::size_t i = 2; uniform && i < raw.size(); ++i) {
    uniform = raw[i].time - raw[i - 1].time == step;
  }
  if (!uniform && !(kind == TimeKind::Instant && calendar_monthly(raw))) {
    throw Error(Errc::NonUniformSpacing, "timestamps are not strictly increasing with constant spacing");
  }

  TimeSeries ts;
  ts.id_ = std::move(id);
  ts.kind_ = kind;
  ts.period_ = period;
  ts.timestamps_.reserve(raw.size());
  ts.values_.reserve(raw.size());
  for (const RawPoint& p : raw) {
    ts.timestamps_.push_back(p.time);
    ts.values_.push_back(p.value);
  }
  ts.seasonal_usable_ = period > 1 && ts.values_.size() >= 2 * static_cast<std::size_t>(period) + 1;
  return ts;
}

TimeSeries TimeSeries::from_values(std::string id, std::vector<double> values, int period) {
  std::vector<RawPoint> raw(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    raw[i] = RawPoint{static_cast<std::int64_t>(i), values[i]};
  }
  return validate_series(std::move(id), raw, period, TimeKind::Index);
}

TimeSeries TimeSeries::prefix(std::size_t length) const {
  if (length < kMinSeriesLength || length > size()) {
    throw Error(Errc::TooShort, "prefix length " + std::to_string(length) + " outside [" +
                                    std::to_string(kMinSeriesLength) + ", " +
                                    std::to_string(size()) + "]");
  }
  TimeSeries out = *this;
  out.timestamps_.resize(length);
  out.values_.resize(length);
  out.seasonal_usable_ = period_ > 1 && length >= 2 * static_cast<std::size_t>(period_) + 1;
  return out;
}

std::pair<TimeSeries, TimeSeries> train_test_split(const TimeSeries& ts, std::size_t horizon) {
  const std::size_t n = ts.size();
  if (horizon < 1 || horizon >= n || n - horizon < kMinTrainLength) {
    throw Error(Errc::BadHorizon, "horizon " + std::to_string(horizon) +
                                      " invalid for series of length " + std::to_string(n));
  }
  auto segment = [&](std::size_t begin, std::size_t end) {
    TimeSeries part;
    part.id_ = ts.id_;
    part.kind_ = ts.kind_;
    part.period_ = ts.period_;
    part.timestamps_.assign(ts.timestamps_.begin() + begin, ts.timestamps_.begin() + end);
    part.values_.assign(ts.values_.begin() + begin, ts.values_.begin() + end);
    part.seasonal_usable_ =
        ts.period_ > 1 && part.values_.size() >= 2 * static_cast<std::size_t>(ts.period_) + 1;
    return part;
  };
  return {segment(0, n - horizon), segment(n - horizon, n)};
}

std::size_t default_horizon(std::size_t n, int period) {
  const std::size_t quarter = n / 4;
  const std::size_t cap = 2 * static_cast<std::size_t>(std::max(period, 1));
  return std::max<std::size_t>(1, std::min(quarter, cap));
}

}  // namespace tsmeta
