#include "tsmeta/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "linalg.hpp"
#include "tsmeta/error.hpp"
#include "tsmeta/smoothing.hpp"
#include "tsmeta/stats.hpp"

namespace tsmeta::features {
namespace {

double sum_sq_first(std::span<const double> v, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(k, v.size()); ++i) s += v[i] * v[i];
  return s;
}

struct SequenceCorrelations {
  Maybe first_ac, ac_sumsq5, pac_sumsq5;
};

SequenceCorrelations sequence_correlations(std::span<const double> x) {
  SequenceCorrelations out;
  if (stats::is_constant(x) || x.size() <= 5) return out;
  const std::vector<double> r = acf(x, 5);
  const std::vector<double> phi = pacf_from_acf(r);
  out.first_ac = r[0];
  out.ac_sumsq5 = sum_sq_first(r, 5);
  out.pac_sumsq5 = sum_sq_first(phi, 5);
  return out;
}

// Means of every width-w sliding window, step 1.
std::vector<double> window_means(std::span<const double> x, std::size_t w) {
  std::vector<double> means;
  if (x.size() < w) return means;
  means.reserve(x.size() - w + 1);
  double acc = std::accumulate(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(w), 0.0);
  means.push_back(acc / static_cast<double>(w));
  for (std::size_t i = w; i < x.size(); ++i) {
    acc += x[i] - x[i - w];
    means.push_back(acc / static_cast<double>(w));
  }
  return means;
}

}  // namespace

std::vector<double> acf(std::span<const double> x, std::size_t max_lag) {
  const std::size_t n = x.size();
  if (max_lag >= n) {
    throw Error(Errc::TooShort, "acf: lag " + std::to_string(max_lag) + " needs more than " +
                                    std::to_string(n) + " points");
  }
  if (stats::is_constant(x)) throw Error(Errc::ConstantInput, "acf of a constant sequence");
  const double m = stats::mean(x);
  std::vector<double> centred(n);
  for (std::size_t t = 0; t < n; ++t) centred[t] = x[t] - m;
  double c0 = 0.0;
  for (double v : centred) c0 += v * v;
  if (c0 <= 0.0) throw Error(Errc::ConstantInput, "acf of a constant sequence");
  std::vector<double> r(max_lag);
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (std::size_t t = k; t < n; ++t) ck += centred[t] * centred[t - k];
    r[k - 1] = ck / c0;
  }
  return r;
}

std::vector<double> pacf_from_acf(std::span<const double> r) {
  const std::size_t k_max = r.size();
  std::vector<double> out(k_max, 0.0);
  if (k_max == 0) return out;
  std::vector<double> phi(k_max + 1, 0.0), prev(k_max + 1, 0.0);
  phi[1] = r[0];
  out[0] = r[0];
  for (std::size_t k = 2; k <= k_max; ++k) {
    prev = phi;
    double num = r[k - 1];
    double den = 1.0;
    for (std::size_t j = 1; j < k; ++j) {
      num -= prev[j] * r[k - j - 1];
      den -= prev[j] * r[j - 1];
    }
    // A perfectly predictable sequence leaves nothing for later lags.
    if (den <= 1e-14) break;
    const double phi_kk = num / den;
    phi[k] = phi_kk;
    for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - phi_kk * prev[k - j];
    out[k - 1] = phi_kk;
  }
  return out;
}

std::vector<double> pacf(std::span<const double> x, std::size_t max_lag) {
  return pacf_from_acf(acf(x, max_lag));
}

AcfPacfFeatures acf_pacf_features(const TimeSeries& ts) {
  const std::span<const double> y = ts.values();
  if (y.size() < 10) throw Error(Errc::TooShort, "acf/pacf features need n >= 10");
  const std::vector<double> d1 = stats::diff(y);
  const std::vector<double> d2 = stats::diff(d1);

  AcfPacfFeatures f;
  const SequenceCorrelations cy = sequence_correlations(y);
  const SequenceCorrelations c1 = sequence_correlations(d1);
  const SequenceCorrelations c2 = sequence_correlations(d2);
  f.acf_y_1 = cy.first_ac;
  f.acf_diff1_1 = c1.first_ac;
  f.acf_diff2_1 = c2.first_ac;
  f.acf_y_sumsq5 = cy.ac_sumsq5;
  f.acf_diff1_sumsq5 = c1.ac_sumsq5;
  f.acf_diff2_sumsq5 = c2.ac_sumsq5;
  f.pacf_y_sumsq5 = cy.pac_sumsq5;
  f.pacf_diff1_sumsq5 = c1.pac_sumsq5;
  f.pacf_diff2_sumsq5 = c2.pac_sumsq5;

  const auto m = static_cast<std::size_t>(ts.effective_period());
  if (m > 1 && m < y.size() && !stats::is_constant(y)) {
    const std::vector<double> r = acf(y, m);
    f.acf_seasonal = r[m - 1];
    f.pacf_seasonal = pacf_from_acf(r)[m - 1];
  }
  return f;
}

double spectral_entropy(const TimeSeries& ts) {
  const std::span<const double> y = ts.values();
  if (stats::is_constant(y)) throw Error(Errc::ConstantInput, "spectral entropy of a constant series");
  const std::size_t n = y.size();
  const double m = stats::mean(y);
  std::vector<double> cos_table(n), sin_table(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    cos_table[j] = std::cos(angle);
    sin_table[j] = std::sin(angle);
  }
  const std::size_t n_freq = n / 2;
  std::vector<double> power(n_freq);
  double total = 0.0;
  for (std::size_t k = 1; k <= n_freq; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t j = (k * t) % n;
      const double v = y[t] - m;
      re += v * cos_table[j];
      im -= v * sin_table[j];
    }
    power[k - 1] = (re * re + im * im) / static_cast<double>(n);
    total += power[k - 1];
  }
  if (total <= 0.0 || n_freq < 2) return 0.0;
  double entropy = 0.0;
  for (double p : power) {
    const double q = p / total;
    if (q > 0.0) entropy -= q * std::log(q);
  }
  return std::clamp(entropy / std::log(static_cast<double>(n_freq)), 0.0, 1.0);
}

WindowFeatures window_features(const TimeSeries& ts) {
  const std::span<const double> y = ts.values();
  const int m = ts.effective_period();
  const auto w = static_cast<std::size_t>(m > 1 ? std::max(m, 10) : 10);
  WindowFeatures f;
  if (y.size() < 2 * w) return f;

  const std::size_t tiles = y.size() / w;
  std::vector<double> tile_var(tiles), tile_mean(tiles);
  for (std::size_t i = 0; i < tiles; ++i) {
    const auto tile = y.subspan(i * w, w);
    tile_var[i] = stats::variance(tile);
    tile_mean[i] = stats::mean(tile);
  }
  f.lumpiness = stats::variance(tile_var);
  f.stability = stats::variance(tile_mean);

  const std::vector<double> means = window_means(y, w);
  double best = -1.0;
  std::size_t best_at = 0;
  for (std::size_t i = 0; i + w < means.size(); ++i) {
    const double shift = std::abs(means[i + w] - means[i]);
    if (shift > best) {
      best = shift;
      best_at = i;
    }
  }
  f.level_shift_max = best;
  f.level_shift_index = static_cast<double>(best_at + 1);
  return f;
}

StlFeatures stl_features(const Decomposition& d) {
  StlFeatures f;
  const std::size_t n = d.remainder.size();
  const double var_r = stats::variance(d.remainder);

  std::vector<double> tr(n);
  for (std::size_t t = 0; t < n; ++t) tr[t] = d.trend[t] + d.remainder[t];
  const double var_tr = stats::variance(tr);
  f.trend_strength = var_tr > 0.0 ? std::max(0.0, 1.0 - var_r / var_tr) : 0.0;

  if (d.period > 1) {
    std::vector<double> sr(n);
    for (std::size_t t = 0; t < n; ++t) sr[t] = d.seasonal[t] + d.remainder[t];
    const double var_sr = stats::variance(sr);
    f.seasonal_strength = var_sr > 0.0 ? std::max(0.0, 1.0 - var_r / var_sr) : 0.0;

    const auto m = static_cast<std::size_t>(d.period);
    const auto cycle = std::span<const double>(d.seasonal).first(m);
    f.peak = static_cast<double>(std::max_element(cycle.begin(), cycle.end()) - cycle.begin() + 1);
    f.trough = static_cast<double>(std::min_element(cycle.begin(), cycle.end()) - cycle.begin() + 1);
  }

  if (n >= 3) {
    const double mr = stats::mean(d.remainder);
    double s2 = 0.0;
    for (double r : d.remainder) s2 += (r - mr) * (r - mr);
    std::vector<double> loo(n);
    const double nm1 = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = d.remainder[i] - mr;
      loo[i] = (s2 - r * r - r * r / nm1) / static_cast<double>(n - 2);
    }
    f.spikiness = stats::variance(loo);
  }
  return f;
}

DistributionFeatures distribution_features(const TimeSeries& ts, int nbins) {
  const std::span<const double> y = ts.values();
  const std::size_t n = y.size();
  DistributionFeatures f;
  if (stats::is_constant(y)) {
    f.flat_spots = static_cast<double>(n);
    f.histogram_mode = y[0];
    return f;
  }
  const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
  const double lo = *lo_it, hi = *hi_it;
  const double width = (hi - lo) / nbins;
  std::vector<int> label(n);
  std::vector<std::size_t> counts(static_cast<std::size_t>(nbins), 0);
  for (std::size_t t = 0; t < n; ++t) {
    const int b = std::min(nbins - 1, static_cast<int>(std::floor((y[t] - lo) / width)));
    label[t] = std::max(b, 0);
    ++counts[static_cast<std::size_t>(label[t])];
  }
  std::size_t run = 1, longest = 1;
  for (std::size_t t = 1; t < n; ++t) {
    run = label[t] == label[t - 1] ? run + 1 : 1;
    longest = std::max(longest, run);
  }
  f.flat_spots = static_cast<double>(longest);
  const auto mode_bin = static_cast<double>(std::max_element(counts.begin(), counts.end()) - counts.begin());
  f.histogram_mode = lo + (mode_bin + 0.5) * width;

  const double mean = stats::mean(y);
  std::size_t above = 0;
  for (double v : y) above += v > mean ? 1 : 0;
  f.binarize_mean = static_cast<double>(above) / static_cast<double>(n);

  const double med = stats::median(y);
  std::size_t crossings = 0;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    if ((y[t] < med && y[t + 1] > med) || (y[t] > med && y[t + 1] < med)) ++crossings;
  }
  f.crossing_points = static_cast<double>(crossings);
  return f;
}

Maybe hurst_exponent(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 20) return std::nullopt;
  constexpr int kGridPoints = 10;
  const double log_lo = std::log(10.0);
  const double log_hi = std::log(static_cast<double>(n / 2));
  std::vector<std::size_t> sizes;
  for (int k = 0; k < kGridPoints; ++k) {
    const double frac = static_cast<double>(k) / (kGridPoints - 1);
    const auto s = static_cast<std::size_t>(std::lround(std::exp(log_lo + frac * (log_hi - log_lo))));
    if (sizes.empty() || sizes.back() != s) sizes.push_back(s);
  }
  if (sizes.size() < 2) return std::nullopt;

  std::vector<double> log_s, log_rs;
  for (std::size_t s : sizes) {
    const std::size_t blocks = n / s;
    double rs_sum = 0.0;
    std::size_t used = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const auto block = x.subspan(b * s, s);
      const double m = stats::mean(block);
      double cum = 0.0, cmax = 0.0, cmin = 0.0, ss = 0.0;
      for (double v : block) {
        cum += v - m;
        cmax = std::max(cmax, cum);
        cmin = std::min(cmin, cum);
        ss += (v - m) * (v - m);
      }
      const double sd = std::sqrt(ss / static_cast<double>(s));
      if (sd > 0.0) {
        rs_sum += (cmax - cmin) / sd;
        ++used;
      }
    }
    if (used > 0 && rs_sum > 0.0) {
      log_s.push_back(std::log(static_cast<double>(s)));
      log_rs.push_back(std::log(rs_sum / static_cast<double>(used)));
    }
  }
  if (log_s.size() < 2) return std::nullopt;
  const double ms = stats::mean(log_s), mr = stats::mean(log_rs);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < log_s.size(); ++i) {
    sxx += (log_s[i] - ms) * (log_s[i] - ms);
    sxy += (log_s[i] - ms) * (log_rs[i] - mr);
  }
  return std::clamp(sxy / sxx, 0.0, 1.0);
}

DependenceFeatures dependence_features(const TimeSeries& ts) {
  const std::span<const double> y = ts.values();
  const std::size_t n = y.size();
  DependenceFeatures f;
  f.hurst = hurst_exponent(y);
  if (stats::is_constant(y)) return f;

  const std::vector<double> r = acf(y, n - 1);
  auto ac = [&](std::size_t k) { return k == 0 ? 1.0 : r[k - 1]; };
  const std::size_t min_cap = std::min(n - 1, std::max<std::size_t>(2, n / 2));
  for (std::size_t k = 1; k < min_cap; ++k) {
    if (ac(k) < ac(k - 1) && ac(k) < ac(k + 1)) {
      f.first_min_ac = static_cast<double>(k);
      break;
    }
  }
  for (std::size_t k = 1; k <= n - 1; ++k) {
    if (ac(k) <= 0.0) {
      f.first_zero_ac = static_cast<double>(k);
      break;
    }
  }
  return f;
}

StationarityFeatures stationarity_features(const TimeSeries& ts) {
  const std::span<const double> y = ts.values();
  const std::size_t n = y.size();
  StationarityFeatures f;
  if (stats::is_constant(y)) return f;
  const double nd = static_cast<double>(n);

  // KPSS around a linear trend, Bartlett long-run variance with one lag.
  const stats::LineFit line = stats::fit_line(y);
  std::vector<double> e(n);
  double total_ss = 0.0;
  const double ym = stats::mean(y);
  for (std::size_t t = 0; t < n; ++t) {
    e[t] = y[t] - (line.intercept + line.slope * static_cast<double>(t));
    total_ss += (y[t] - ym) * (y[t] - ym);
  }
  double gamma0 = 0.0, gamma1 = 0.0;
  for (std::size_t t = 0; t < n; ++t) gamma0 += e[t] * e[t];
  for (std::size_t t = 1; t < n; ++t) gamma1 += e[t] * e[t - 1];
  if (gamma0 > 1e-20 * total_ss) {
    const double long_run = (gamma0 + 2.0 * 0.5 * gamma1) / nd;
    if (long_run > 0.0) {
      double partial = 0.0, eta = 0.0;
      for (double v : e) {
        partial += v;
        eta += partial * partial;
      }
      f.kpss_stat = eta / (nd * nd * long_run);
    }
  }

  // Engle's ARCH LM statistic on the demeaned series.
  const std::size_t lags = std::max<std::size_t>(1, std::min<std::size_t>(12, n / 4));
  if (n >= 3 * lags) {
    std::vector<double> sq(n);
    for (std::size_t t = 0; t < n; ++t) sq[t] = (y[t] - ym) * (y[t] - ym);
    const std::size_t rows = n - lags;
    Eigen::MatrixXd design(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(lags + 1));
    Eigen::VectorXd response(static_cast<Eigen::Index>(rows));
    for (std::size_t i = 0; i < rows; ++i) {
      const std::size_t t = i + lags;
      const auto row = static_cast<Eigen::Index>(i);
      response(row) = sq[t];
      design(row, 0) = 1.0;
      for (std::size_t l = 1; l <= lags; ++l) design(row, static_cast<Eigen::Index>(l)) = sq[t - l];
    }
    if (const auto fit = detail::ols(design, response)) f.arch_stat = nd * fit->r_squared;
  }
  return f;
}

RegressionFeatures regression_features(const TimeSeries& ts) {
  RegressionFeatures f;
  f.linearity = stats::is_constant(ts.values()) ? 0.0 : stats::fit_line(ts.values()).r_squared;
  const std::vector<double> d = stats::diff(ts.values());
  f.std_deriv1 = std::sqrt(stats::variance(d));
  return f;
}

SmoothingParamFeatures smoothing_param_features(const TimeSeries& ts) {
  const std::span<const double> y = ts.values();
  SmoothingParamFeatures f;
  constexpr int kSteps = 19;  // 0.05, 0.10, ..., 0.95
  auto grid = [](int k) { return static_cast<double>(k) / 20.0; };

  double best = std::numeric_limits<double>::infinity();
  for (int a = 1; a <= kSteps; ++a) {
    for (int b = 1; b <= kSteps; ++b) {
      const double sse = models::holt_filter(y, grid(a), grid(b)).sse;
      if (sse < best) {
        best = sse;
        f.holt_alpha = grid(a);
        f.holt_beta = grid(b);
      }
    }
  }

  if (ts.seasonal_usable()) {
    const int m = ts.period();
    best = std::numeric_limits<double>::infinity();
    for (int a = 1; a <= kSteps; ++a) {
      for (int b = 1; b <= kSteps; ++b) {
        for (int g = 1; g <= kSteps; ++g) {
          const double sse = models::holt_winters_filter(y, m, grid(a), grid(b), grid(g), best).sse;
          if (sse < best) {
            best = sse;
            f.hw_alpha = grid(a);
            f.hw_beta = grid(b);
            f.hw_gamma = grid(g);
          }
        }
      }
    }
  }
  return f;
}

FeatureVector extract_features(const TimeSeries& ts) {
  FeatureVector fv;
  const std::span<const double> y = ts.values();
  auto put = [&fv](Feature f, const Maybe& v) {
    if (v && std::isfinite(*v)) {
      fv.set(f, *v);
    } else {
      fv.mask(f);
    }
  };

  fv.set(Feature::Length, static_cast<double>(y.size()));
  fv.set(Feature::Mean, stats::mean(y));
  fv.set(Feature::Variance, stats::variance(y));

  try {
    fv.set(Feature::SpectralEntropy, spectral_entropy(ts));
  } catch (const Error&) {
    fv.mask(Feature::SpectralEntropy);
  }

  const WindowFeatures wf = window_features(ts);
  put(Feature::Lumpiness, wf.lumpiness);
  put(Feature::Stability, wf.stability);
  put(Feature::LevelShiftMax, wf.level_shift_max);
  put(Feature::LevelShiftIndex, wf.level_shift_index);

  const StlFeatures sf = stl_features(decompose(ts));
  put(Feature::TrendStrength, sf.trend_strength);
  put(Feature::SeasonalStrength, sf.seasonal_strength);
  put(Feature::Spikiness, sf.spikiness);
  put(Feature::Peak, sf.peak);
  put(Feature::Trough, sf.trough);

  const DistributionFeatures df = distribution_features(ts);
  fv.set(Feature::FlatSpots, df.flat_spots);
  fv.set(Feature::HistogramMode, df.histogram_mode);
  fv.set(Feature::BinarizeMean, df.binarize_mean);
  fv.set(Feature::CrossingPoints, df.crossing_points);

  const DependenceFeatures dep = dependence_features(ts);
  put(Feature::Hurst, dep.hurst);
  put(Feature::FirstMinAc, dep.first_min_ac);
  put(Feature::FirstZeroAc, dep.first_zero_ac);

  AcfPacfFeatures ap;
  try {
    ap = acf_pacf_features(ts);
  } catch (const Error&) {
    // leave everything undefined
  }
  put(Feature::AcfY1, ap.acf_y_1);
  put(Feature::AcfDiff1_1, ap.acf_diff1_1);
  put(Feature::AcfDiff2_1, ap.acf_diff2_1);
  put(Feature::AcfYSumsq5, ap.acf_y_sumsq5);
  put(Feature::AcfDiff1Sumsq5, ap.acf_diff1_sumsq5);
  put(Feature::AcfDiff2Sumsq5, ap.acf_diff2_sumsq5);
  put(Feature::AcfSeasonal, ap.acf_seasonal);
  put(Feature::PacfYSumsq5, ap.pacf_y_sumsq5);
  put(Feature::PacfDiff1Sumsq5, ap.pacf_diff1_sumsq5);
  put(Feature::PacfDiff2Sumsq5, ap.pacf_diff2_sumsq5);
  put(Feature::PacfSeasonal, ap.pacf_seasonal);

  const RegressionFeatures rf = regression_features(ts);
  fv.set(Feature::Linearity, rf.linearity);
  fv.set(Feature::StdDeriv1, rf.std_deriv1);

  const StationarityFeatures st = stationarity_features(ts);
  put(Feature::ArchStat, st.arch_stat);
  put(Feature::KpssStat, st.kpss_stat);

  const SmoothingParamFeatures sp = smoothing_param_features(ts);
  fv.set(Feature::HoltAlpha, sp.holt_alpha);
  fv.set(Feature::HoltBeta, sp.holt_beta);
  put(Feature::HwAlpha, sp.hw_alpha);
  put(Feature::HwBeta, sp.hw_beta);
  put(Feature::HwGamma, sp.hw_gamma);

  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    if (!std::isfinite(fv.values[i])) {
      fv.values[i] = 0.0;
      fv.defined[i] = false;
    }
  }
  return fv;
}

}  // namespace tsmeta::features
