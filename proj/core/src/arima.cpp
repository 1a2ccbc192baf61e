#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "linalg.hpp"
#include "nelder_mead.hpp"
#include "tsmeta/models.hpp"
#include "tsmeta/stats.hpp"

namespace tsmeta::models {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FitOutcome failure(std::string why) { return FitOutcome{std::nullopt, std::move(why)}; }

// Conditional residuals: e_t = 0 for t < p, shocks before the sample are 0.
std::vector<double> css_residuals(std::span<const double> w, std::span<const double> ar,
                                  std::span<const double> ma) {
  const std::size_t p = ar.size(), q = ma.size();
  std::vector<double> e(w.size(), 0.0);
  for (std::size_t t = p; t < w.size(); ++t) {
    double pred = 0.0;
    for (std::size_t i = 1; i <= p; ++i) pred += ar[i - 1] * w[t - i];
    for (std::size_t j = 1; j <= q && j <= t; ++j) pred += ma[j - 1] * e[t - j];
    e[t] = w[t] - pred;
  }
  return e;
}

}  // namespace

double max_inverse_root(std::span<const double> coeffs) {
  const std::size_t k = coeffs.size();
  if (k == 0) return 0.0;
  if (k == 1) return std::abs(coeffs[0]);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) companion(0, static_cast<Eigen::Index>(j)) = coeffs[j];
  for (std::size_t i = 1; i < k; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) return kInf;
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

FitOutcome fit_arima(const TimeSeries& ts, const HyperParamAssignment& params) {
  const auto p = static_cast<std::size_t>(params.integer("p"));
  const auto d = static_cast<std::size_t>(params.integer("d"));
  const auto q = static_cast<std::size_t>(params.integer("q"));

  std::vector<std::vector<double>> levels{std::vector<double>(ts.values().begin(), ts.values().end())};
  for (std::size_t k = 0; k < d; ++k) levels.push_back(stats::diff(levels.back()));
  std::vector<double> w = levels.back();
  const std::size_t nw = w.size();

  const std::size_t long_order = std::max<std::size_t>(8, p + q);
  const std::size_t start = q > 0 ? std::max(p, long_order + q) : p;
  if (nw < 3 || (q > 0 && nw < 2 * long_order + 2) || nw < start + p + q + 2) {
    return failure("ARIMA(" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(q) +
                   ") needs more than " + std::to_string(ts.size()) + " points");
  }

  const double mean = d == 0 ? stats::mean(w) : 0.0;
  for (double& v : w) v -= mean;

  // Hannan-Rissanen: long autoregression for innovations, then regression
  // on p lags and q lagged innovations.
  std::vector<double> innovations(nw, 0.0);
  if (q > 0) {
    const std::size_t rows = nw - long_order;
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(long_order));
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t t = r + long_order;
      y(static_cast<Eigen::Index>(r)) = w[t];
      for (std::size_t l = 1; l <= long_order; ++l) {
        x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l - 1)) = w[t - l];
      }
    }
    const auto fit = detail::ols(x, y);
    if (!fit) return failure("long autoregression is singular");
    for (std::size_t r = 0; r < rows; ++r) innovations[r + long_order] = fit->residuals(static_cast<Eigen::Index>(r));
  }

  std::vector<double> coef(p + q, 0.0);
  if (p + q > 0) {
    const std::size_t rows = nw - start;
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(p + q));
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t t = r + start;
      const auto row = static_cast<Eigen::Index>(r);
      y(row) = w[t];
      for (std::size_t i = 1; i <= p; ++i) x(row, static_cast<Eigen::Index>(i - 1)) = w[t - i];
      for (std::size_t j = 1; j <= q; ++j) x(row, static_cast<Eigen::Index>(p + j - 1)) = innovations[t - j];
    }
    const auto fit = detail::ols(x, y);
    if (!fit) return failure("Hannan-Rissanen regression is singular");
    for (std::size_t i = 0; i < p + q; ++i) coef[i] = fit->coef(static_cast<Eigen::Index>(i));
  }

  auto css = [&](const std::vector<double>& c) {
    const std::span<const double> ar(c.data(), p);
    const std::span<const double> ma(c.data() + p, q);
    if (max_inverse_root(ar) >= 1.0) return kInf;
    std::vector<double> neg_ma(ma.begin(), ma.end());
    for (double& v : neg_ma) v = -v;
    if (max_inverse_root(neg_ma) >= 1.0) return kInf;
    double s = 0.0;
    for (double e : css_residuals(w, ar, ma)) s += e * e;
    return std::isfinite(s) ? s : kInf;
  };

  double value = css(coef);
  if (p + q > 0) {
    if (!std::isfinite(value)) {
      std::fill(coef.begin(), coef.end(), 0.0);
      value = css(coef);
    }
    const detail::NelderMeadResult nm = detail::nelder_mead(css, coef, kNelderMeadMaxIterations);
    if (nm.value <= value) {
      coef = nm.x;
      value = nm.value;
    }
  }
  if (!std::isfinite(value)) return failure("conditional sum of squares diverged");

  ArimaState s;
  s.p = static_cast<int>(p);
  s.d = static_cast<int>(d);
  s.q = static_cast<int>(q);
  s.ar.assign(coef.begin(), coef.begin() + static_cast<std::ptrdiff_t>(p));
  s.ma.assign(coef.begin() + static_cast<std::ptrdiff_t>(p), coef.end());
  if (max_inverse_root(s.ar) >= 1.0 / kArRootRadius) {
    return failure("AR polynomial has a root inside radius 1.001");
  }
  s.mean = mean;
  s.css = value;
  const std::vector<double> e = css_residuals(w, s.ar, s.ma);
  s.w_tail.assign(w.end() - static_cast<std::ptrdiff_t>(p), w.end());
  s.residual_tail.assign(e.end() - static_cast<std::ptrdiff_t>(q), e.end());
  for (std::size_t k = 0; k < d; ++k) s.level_tails.push_back(levels[k].back());

  FittedModel fm;
  fm.model = ModelId::Arima;
  fm.params = params;
  fm.train_n = ts.size();
  fm.state = std::move(s);
  return FitOutcome{std::move(fm), {}};
}

std::vector<double> forecast_arima(const ArimaState& s, std::size_t h) {
  const auto p = static_cast<std::size_t>(s.p);
  const auto q = static_cast<std::size_t>(s.q);
  std::vector<double> w_hist = s.w_tail;
  std::vector<double> e_hist = s.residual_tail;
  std::vector<double> out(h);
  for (std::size_t step = 0; step < h; ++step) {
    double v = 0.0;
    for (std::size_t i = 1; i <= p; ++i) v += s.ar[i - 1] * w_hist[w_hist.size() - i];
    for (std::size_t j = 1; j <= q; ++j) v += s.ma[j - 1] * e_hist[e_hist.size() - j];
    w_hist.push_back(v);
    e_hist.push_back(0.0);
    out[step] = v + s.mean;
  }
  for (std::size_t k = s.level_tails.size(); k-- > 0;) {
    double last = s.level_tails[k];
    for (double& v : out) {
      last += v;
      v = last;
    }
  }
  return out;
}

}  // namespace tsmeta::models
