#include "tsmeta/tuning.hpp"

#include <cmath>
#include <numbers>

#include "tsmeta/error.hpp"
#include "tsmeta/metrics.hpp"
#include "tsmeta/models.hpp"

namespace tsmeta {

double KeyedRng::normal() noexcept {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace tuning {
namespace {

SearchResult reduce(std::vector<TrialResult> trials) {
  SearchResult out;
  std::size_t best = 0;
  bool found = false;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (trials[i].failed()) continue;
    if (!found || *trials[i].error < *trials[best].error) {
      best = i;
      found = true;
    }
  }
  out.best = trials[best];
  out.trials = std::move(trials);
  return out;
}

}  // namespace

TrialResult evaluate_params(ModelId id, const HyperParamAssignment& assignment,
                            const TimeSeries& ts, const SplitConfig& cfg) {
  TrialResult r;
  r.assignment = assignment;
  try {
    const auto [train, test] = train_test_split(ts, cfg);
    const models::FitOutcome fitted = models::fit(id, train, assignment);
    if (!fitted.ok()) {
      r.failure = fitted.failure;
      return r;
    }
    const ForecastResult fc = models::predict(*fitted.model, test.size());
    for (double v : fc.point_forecasts) {
      if (!std::isfinite(v)) {
        r.failure = "non-finite forecast";
        return r;
      }
    }
    r.error = mape(test.values(), fc.point_forecasts);
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidParams) throw;
    r.failure = e.what();
  }
  return r;
}

std::uint64_t trial_key(std::uint64_t seed, std::string_view series_id, ModelId id,
                        std::uint64_t trial) {
  return stream_key({seed, hash_string(series_id), static_cast<std::uint64_t>(model_index(id)), trial});
}

HyperParamAssignment draw_assignment(const HyperParamSpace& space, KeyedRng& rng) {
  HyperParamAssignment a;
  a.model = space.model;
  for (const ParamDomain& d : space.domains) {
    std::visit(
        [&](const auto& dom) {
          using D = std::decay_t<decltype(dom)>;
          if constexpr (std::is_same_v<D, Categorical>) {
            a.values[d.name] = dom.labels[rng.below(dom.labels.size())];
          } else if constexpr (std::is_same_v<D, IntegerRange>) {
            const auto span = static_cast<std::uint64_t>(dom.hi - dom.lo) + 1;
            a.values[d.name] = dom.lo + static_cast<std::int64_t>(rng.below(span));
          } else {
            a.values[d.name] = std::min(dom.hi, dom.lo + rng.uniform() * (dom.hi - dom.lo));
          }
        },
        d.kind);
  }
  return a;
}

SearchResult random_search(ModelId id, const TimeSeries& ts, const HyperParamSpace& space,
                           std::size_t trials, std::uint64_t seed, const SplitConfig& cfg) {
  if (trials == 0) throw Error(Errc::EmptySpaceWithZeroTrials, "random search needs at least one trial");
  std::vector<TrialResult> results;
  results.reserve(trials);
  for (std::size_t k = 0; k < trials; ++k) {
    KeyedRng rng(trial_key(seed, ts.id(), id, k));
    TrialResult r = evaluate_params(id, draw_assignment(space, rng), ts, cfg);
    r.trial_index = k;
    results.push_back(std::move(r));
  }
  return reduce(std::move(results));
}

std::vector<HyperParamAssignment> grid_points(const HyperParamSpace& space, std::size_t resolution) {
  std::vector<std::vector<ParamValue>> axes;
  std::size_t total = 1;
  for (const ParamDomain& d : space.domains) {
    std::vector<ParamValue> axis;
    std::visit(
        [&](const auto& dom) {
          using D = std::decay_t<decltype(dom)>;
          if constexpr (std::is_same_v<D, Categorical>) {
            for (const auto& l : dom.labels) axis.emplace_back(l);
          } else if constexpr (std::is_same_v<D, IntegerRange>) {
            for (std::int64_t v = dom.lo; v <= dom.hi; ++v) axis.emplace_back(v);
          } else {
            const std::size_t k = std::max<std::size_t>(1, resolution);
            for (std::size_t i = 0; i < k; ++i) {
              const double v = i + 1 == k && k > 1
                                   ? dom.hi
                                   : dom.lo + (dom.hi - dom.lo) * static_cast<double>(i) /
                                                  static_cast<double>(std::max<std::size_t>(1, k - 1));
              axis.emplace_back(v);
            }
          }
        },
        d.kind);
    if (axis.empty()) throw Error(Errc::InvalidParams, "domain '" + d.name + "' is empty");
    total *= axis.size();
    if (total > kMaxGridSize) {
      throw Error(Errc::GridTooLarge, "grid exceeds " + std::to_string(kMaxGridSize) + " points");
    }
    axes.push_back(std::move(axis));
  }

  std::vector<HyperParamAssignment> points;
  points.reserve(total);
  std::vector<std::size_t> digit(axes.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    HyperParamAssignment a;
    a.model = space.model;
    for (std::size_t i = 0; i < axes.size(); ++i) a.values[space.domains[i].name] = axes[i][digit[i]];
    points.push_back(std::move(a));
    for (std::size_t i = axes.size(); i-- > 0;) {
      if (++digit[i] < axes[i].size()) break;
      digit[i] = 0;
    }
  }
  return points;
}

SearchResult grid_search(ModelId id, const TimeSeries& ts, const HyperParamSpace& space,
                         std::size_t resolution, const SplitConfig& cfg) {
  const std::vector<HyperParamAssignment> points = grid_points(space, resolution);
  std::vector<TrialResult> results;
  results.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    TrialResult r = evaluate_params(id, points[k], ts, cfg);
    r.trial_index = k;
    results.push_back(std::move(r));
  }
  return reduce(std::move(results));
}

}  // namespace tuning
}  // namespace tsmeta
