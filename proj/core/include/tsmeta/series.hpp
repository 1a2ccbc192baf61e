#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tsmeta {

inline constexpr std::size_t kMinSeriesLength = 5;
// A train segment may be one point shorter than a full series so that the
// shortest series still admits a 4/1 holdout split.
inline constexpr std::size_t kMinTrainLength = 4;

// How the integer timestamps of a series are to be read.
enum class TimeKind {
  Index,    // plain integer positions
  Instant,  // seconds since the Unix epoch (parsed from ISO-8601)
};

struct RawPoint {
  std::int64_t time = 0;
  double value = 0.0;
};

/// Uniformly spaced univariate series with a caller-supplied seasonal period.
///
/// Instances are only produced by validate_series (or the helpers built on
/// it), so every TimeSeries has strictly increasing, uniformly spaced
/// timestamps and finite values. Calendar-monthly instants (same day and
/// time of day, constant month step) count as uniformly spaced.
class TimeSeries {
 public:
  const std::string& id() const noexcept { return id_; }
  std::span<const std::int64_t> timestamps() const noexcept { return timestamps_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  int period() const noexcept { return period_; }
  TimeKind time_kind() const noexcept { return kind_; }

  /// n >= 2m + 1 and m > 1.
  bool seasonal_usable() const noexcept { return seasonal_usable_; }
  /// The period seasonal computations should use: m when usable, else 1.
  int effective_period() const noexcept { return seasonal_usable_ ? period_ : 1; }

  /// Builds a series with index timestamps 0..n-1.
  static TimeSeries from_values(std::string id, std::vector<double> values, int period);

  /// First `length` points as a full series (length >= kMinSeriesLength).
  TimeSeries prefix(std::size_t length) const;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  TimeSeries() = default;

  friend TimeSeries validate_series(std::string id, std::span<const RawPoint> raw, int period,
                                    TimeKind kind);
  friend std::pair<TimeSeries, TimeSeries> train_test_split(const TimeSeries& ts,
                                                             std::size_t horizon);

  std::string id_;
  std::vector<std::int64_t> timestamps_;
  std::vector<double> values_;
  int period_ = 1;
  bool seasonal_usable_ = false;
  TimeKind kind_ = TimeKind::Index;
};

/// Checks ordering, spacing, finiteness, length and period.
/// Throws Error with DuplicateTimestamp, NonUniformSpacing, NonFiniteValue,
/// TooShort or BadPeriod.
TimeSeries validate_series(std::string id, std::span<const RawPoint> raw, int period,
                           TimeKind kind = TimeKind::Index);

struct SplitConfig {
  std::size_t horizon = 1;
};

/// Train = first n-h points, test = last h. The train segment must keep at
/// least kMinTrainLength points; otherwise BadHorizon.
std::pair<TimeSeries, TimeSeries> train_test_split(const TimeSeries& ts, std::size_t horizon);

inline std::pair<TimeSeries, TimeSeries> train_test_split(const TimeSeries& ts,
                                                          const SplitConfig& cfg) {
  return train_test_split(ts, cfg.horizon);
}

/// Holdout length used when the caller does not pin one: a quarter of the
/// series, capped at two seasonal periods, never below 1.
std::size_t default_horizon(std::size_t n, int period);

}  // namespace tsmeta
