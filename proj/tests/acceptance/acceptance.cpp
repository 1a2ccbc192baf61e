// Acceptance suite: one PASS/FAIL/SKIP line per criterion, exit status 1 if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "oracles.hpp"
#include "tsmeta/decomposition.hpp"
#include "tsmeta/features.hpp"
#include "tsmeta/learners.hpp"
#include "tsmeta/metadata.hpp"
#include "tsmeta/models.hpp"
#include "tsmeta/pipeline.hpp"
#include "tsmeta/synthetic.hpp"

using namespace tsmeta;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

// Accumulates sub-checks; the first failures are kept for the report line.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      ++failed_;
      if (failures_.size() < 3) failures_.push_back(what);
    }
  }
  Outcome outcome(const std::string& summary) const {
    if (failed_ == 0) return {Verdict::Pass, summary + "; " + std::to_string(total_) + " checks"};
    std::string d = std::to_string(failed_) + "/" + std::to_string(total_) + " checks failed:";
    for (const auto& f : failures_) d += " [" + f + "]";
    return {Verdict::Fail, d};
  }

 private:
  std::size_t total_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double feature(const FeatureVector& fv, std::string_view name) {
  return fv.values[index_of(*feature_from_name(name))];
}

// ---- 1 ---------------------------------------------------------------------------

Outcome feature_suite() {
  using namespace features;
  Checks c;
  double hurst = 0;
  for (std::uint64_t s = 0; s < 50; ++s) hurst += *hurst_exponent(oracle::white_noise(1000, s));
  hurst /= 50;
  c.expect(hurst >= 0.4 && hurst <= 0.6, "white-noise hurst " + fmt("%.3f", hurst));

  std::vector<double> ramp(200);
  std::iota(ramp.begin(), ramp.end(), 1.0);
  c.expect(std::abs(regression_features(oracle::series(ramp)).linearity - 1.0) <= 1e-9, "ramp linearity");

  std::mt19937_64 gen(2024);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 5 + gen() % 300;
    const int m = 1 + static_cast<int>(gen() % 24);
    auto y = oracle::white_noise(n, gen(), 1.0 + static_cast<double>(gen() % 1000));
    for (std::size_t t = 0; t < n; ++t) y[t] += 0.01 * static_cast<double>(gen() % 100) * static_cast<double>(t);
    const auto d = decompose(oracle::series(y, m));
    for (std::size_t t = 0; t < n; ++t) worst = std::max(worst, std::abs(d.trend[t] + d.seasonal[t] + d.remainder[t] - y[t]));
  }
  c.expect(worst <= 1e-9, "reconstruction error " + fmt("%.2e", worst));

  // Module examples.
  const auto flat = distribution_features(oracle::series(std::vector<double>(50, 1.0)));
  c.expect(flat.flat_spots == 50 && flat.crossing_points == 0 && flat.binarize_mean == 0, "constant distribution");
  c.expect(distribution_features(oracle::series({1, 2, 1, 2, 1, 2})).crossing_points == 5, "crossing points");
  std::vector<double> alt(100);
  for (std::size_t t = 0; t < alt.size(); ++t) alt[t] = t % 2 ? -1.0 : 1.0;
  const double r1 = acf(alt, 1)[0];
  c.expect(r1 >= -1 && r1 <= -0.9, "alternating acf");
  const double phi = acf(oracle::ar1(2000, 0.8, 3), 1)[0];
  c.expect(phi >= 0.75 && phi <= 0.85, "ar1 acf");
  std::vector<double> step(100, 0.0);
  std::fill(step.begin() + 50, step.end(), 10.0);
  c.expect(std::abs(*window_features(oracle::series(step)).level_shift_max - 10.0) <= 1e-12, "step level shift");
  const auto wc = window_features(oracle::series(std::vector<double>(60, 3.0)));
  c.expect(*wc.lumpiness == 0 && *wc.stability == 0 && *wc.level_shift_max == 0 && *wc.level_shift_index == 1,
           "constant window features");
  const auto st = stl_features(decompose(oracle::series(oracle::tiled(40, {3, 0, -1, -2}), 4)));
  c.expect(*st.seasonal_strength >= 0.99 && *st.peak == 1 && *st.trough == 4, "tiled peak/trough");
  c.expect(stl_features(decompose(oracle::series(ramp))).trend_strength.value_or(0) >= 0.99, "ramp trend strength");
  std::vector<double> sine(512);
  for (std::size_t t = 0; t < sine.size(); ++t) sine[t] = std::sin(2 * std::numbers::pi * t / 64.0);
  c.expect(spectral_entropy(oracle::series(sine)) <= 0.3, "sinusoid entropy");
  int noisy = 0;
  for (std::uint64_t s = 0; s < 50; ++s) noisy += spectral_entropy(oracle::series(oracle::white_noise(512, s))) >= 0.85;
  c.expect(noisy == 50, "white-noise entropy");
  int kpss = 0, rw = 0, arch = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    kpss += *stationarity_features(oracle::series(oracle::white_noise(500, s))).kpss_stat <= 0.146;
    rw += *stationarity_features(oracle::series(oracle::random_walk(500, s))).kpss_stat >= 0.5;
    arch += *stationarity_features(oracle::series(oracle::white_noise(500, s))).arch_stat < 21.026;
  }
  c.expect(kpss >= 40 && rw >= 45 && arch >= 40, "kpss/arch frequencies");
  std::vector<double> cosine(120);
  for (std::size_t t = 0; t < cosine.size(); ++t) cosine[t] = std::cos(2 * std::numbers::pi * t / 12.0);
  c.expect(std::abs(*dependence_features(oracle::series(cosine, 12)).first_zero_ac - 3.0) <= 1.0, "cosine first zero");

  // Covariance invariants.
  const std::vector<std::string_view> shift_inv = {
      "spectral_entropy", "lumpiness",        "acf_y_1",           "acf_diff1_1",       "acf_diff2_1",
      "acf_y_sumsq5",     "acf_diff1_sumsq5", "acf_diff2_sumsq5",  "acf_seasonal",      "pacf_y_sumsq5",
      "pacf_diff1_sumsq5", "pacf_diff2_sumsq5", "pacf_seasonal",   "hurst",             "crossing_points",
      "linearity",        "std_deriv1",       "arch_stat",         "kpss_stat"};
  const std::vector<std::string_view> scale_inv = {
      "spectral_entropy", "acf_y_1",          "acf_diff1_1",       "acf_diff2_1",       "acf_y_sumsq5",
      "acf_diff1_sumsq5", "acf_diff2_sumsq5", "acf_seasonal",      "pacf_y_sumsq5",     "pacf_diff1_sumsq5",
      "pacf_diff2_sumsq5", "pacf_seasonal",   "hurst",             "linearity",         "binarize_mean",
      "crossing_points"};
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); };
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto y = oracle::ar1(144, 0.5, 100 + s);
    std::vector<double> shifted(y), scaled(y);
    for (double& v : shifted) v += 250.0;
    for (double& v : scaled) v *= 7.5;
    const auto a = extract_features(oracle::series(y, 12));
    const auto b = extract_features(oracle::series(shifted, 12));
    const auto k = extract_features(oracle::series(scaled, 12));
    for (auto name : shift_inv) c.expect(close(feature(a, name), feature(b, name)), "shift " + std::string(name));
    for (auto name : scale_inv) c.expect(close(feature(a, name), feature(k, name)), "scale " + std::string(name));
    c.expect(close(7.5 * 7.5 * feature(a, "variance"), feature(k, "variance")), "scale variance");
  }
  return c.outcome("hurst(WN) avg " + fmt("%.3f", hurst) + ", max reconstruction error " + fmt("%.1e", worst));
}

// ---- 2 ---------------------------------------------------------------------------

Outcome schema() {
  Checks c;
  const auto& names = feature_names();
  c.expect(names.size() == 40, "name count");
  c.expect(std::set<std::string_view>(names.begin(), names.end()).size() == 40, "distinct names");
  const auto fv = features::extract_features(oracle::series(oracle::ar1(96, 0.4, 1), 12));
  c.expect(fv.values.size() == 40 && fv.defined.size() == 40, "vector width");
  c.expect(std::all_of(fv.values.begin(), fv.values.end(), [](double v) { return std::isfinite(v); }), "finite");
  return c.outcome("40 named features");
}

// ---- 3 & 4 -------------------------------------------------------------------------

HyperParamSpace three_head_space() {
  return {ModelId::Stlf,
          {ParamDomain{"method", Categorical{{"naive", "ses", "linear"}}}, ParamDomain{"variant", Categorical{{"a", "b"}}},
           ParamDomain{"alpha", ContinuousRange{0.05, 0.95}}}};
}

learners::Input random_input(std::mt19937_64& gen) {
  std::normal_distribution<double> z(0, 1);
  learners::Input x;
  for (double& v : x) v = z(gen);
  return x;
}

Outcome gradient_check() {
  using namespace learners;
  std::mt19937_64 gen(3);
  auto net = init_net(three_head_space(), 17);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  for (const auto& L : net.layers) {
    for (std::size_t i = L.weights(); i < L.size(); ++i) net.params[L.offset + i] = u(gen);
  }
  std::vector<Input> x;
  std::vector<Target> t;
  for (int i = 0; i < 5; ++i) {
    x.push_back(random_input(gen));
    t.push_back({static_cast<double>(gen() % 3), static_cast<double>(gen() % 2), 0.1 * static_cast<double>(gen() % 10)});
  }
  std::vector<double> grad;
  loss_and_gradient(net, x, t, 1.0, grad);
  double worst = 0;
  for (std::size_t i = 0; i < net.params.size(); ++i) {
    const double keep = net.params[i];
    net.params[i] = keep + 1e-5;
    const double up = loss(net, x, t, 1.0).total;
    net.params[i] = keep - 1e-5;
    const double down = loss(net, x, t, 1.0).total;
    net.params[i] = keep;
    const double fd = (up - down) / 2e-5;
    worst = std::max(worst, std::abs(fd - grad[i]) / std::max({std::abs(fd), std::abs(grad[i]), 1e-6}));
  }
  Checks c;
  c.expect(worst <= 1e-4, "max relative error " + fmt("%.2e", worst));
  return c.outcome(std::to_string(net.params.size()) + " parameters, max relative error " + fmt("%.2e", worst));
}

Outcome loss_semantics() {
  using namespace learners;
  std::mt19937_64 gen(4);
  std::vector<Input> x;
  std::vector<Target> t;
  for (int i = 0; i < 64; ++i) {
    x.push_back(random_input(gen));
    t.push_back({static_cast<double>(gen() % 3), static_cast<double>(gen() % 2), 0.9});
  }
  const auto space = three_head_space();
  MtlConfig cfg;
  cfg.s = 1e9;
  cfg.seed = 2;
  MultiTaskNet prev = init_net(space, cfg.seed, cfg.head_width);
  double worst = 0;
  for (std::size_t epochs = 1; epochs <= 5; ++epochs) {
    cfg.epochs = epochs;
    const auto net = train_mtl(space, x, t, cfg).net;
    const auto [b, e] = net.head_param_range(2);
    double sq = 0;
    for (std::size_t i = b; i < e; ++i) sq += (net.params[i] - prev.params[i]) * (net.params[i] - prev.params[i]);
    worst = std::max(worst, std::sqrt(sq));
    prev = net;
  }
  const auto parts = loss(init_net(space, 9), x, t, 1.0);
  const double gap = std::abs(parts.total - (parts.ce + parts.mse));
  Checks c;
  c.expect(worst <= 1e-6, "numeric-head update norm " + fmt("%.2e", worst));
  c.expect(gap <= 1e-12, "decomposition gap " + fmt("%.2e", gap));
  return c.outcome("max numeric-head update " + fmt("%.1e", worst) + " per epoch at s=1e9, |total-(CE+MSE)| " +
                   fmt("%.1e", gap));
}

// ---- 5 ---------------------------------------------------------------------------

Outcome cost_model() {
  Checks c;
  const std::vector<double> want{120, 6, 6, 20, 1, 1, 20, 1, 1};
  std::string got;
  for (std::size_t i = 0; i < 9; ++i) {
    const double v = metadata::per_series_cost(kAllStrategies[i], {});
    got += (i ? "," : "") + fmt("%g", v);
    c.expect(v == want[i], strategy_name(kAllStrategies[i]));
  }
  const Strategy ssl{ModelSelection::SslMs, HptMode::SslHpt};
  c.expect(metadata::estimated_cost(ssl, 1.0, 100, {}) == 2000.0, "p=1 limit");
  c.expect(metadata::estimated_cost(ssl, 0.0, 100, {}) == 100.0, "p=0 limit");
  return c.outcome("runtime column [" + got + "]");
}

// ---- 6 ---------------------------------------------------------------------------

struct Replication {
  std::array<double, 9> avg{};
};

double avg_of(const Replication& r, ModelSelection s, HptMode h) {
  for (std::size_t i = 0; i < 9; ++i) {
    if (kAllStrategies[i] == Strategy{s, h}) return r.avg[i];
  }
  return std::nan("");
}

Outcome directional_reproduction() {
  const auto t0 = Clock::now();
  constexpr int kReps = 10;
  int ok_a = 0, ok_b = 0;
  double ssl_time = 0, search_time = 0, feature_time = 0;
  std::size_t timed = 0;
  std::array<double, 9> mean_avg{};
  for (int rep = 0; rep < kReps; ++rep) {
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(rep);
    const auto corpus = synthetic::generate_corpus(400, seed);
    const auto built = metadata::build_corpus(corpus, metadata::MetaConfig{20, seed, std::nullopt}, jobs());
    const auto split = metadata::split_meta(built.records, 0.75, seed);
    learners::LearnerConfig lc;
    lc.seed = seed;
    auto l = learners::train_learners(split.train, lc, jobs());
    for (const auto& r : split.train) l.train_ids.push_back(r.series_id);
    const auto report =
        pipeline::evaluate_methods(split.test, corpus, l, pipeline::EvalConfig{seed, std::nullopt, 0.75, {}}, jobs());
    Replication r;
    for (std::size_t i = 0; i < 9; ++i) {
      r.avg[i] = report.rows[i].avg_mape;
      mean_avg[i] += r.avg[i] / kReps;
    }
    using enum HptMode;
    bool a = true, b = true;
    for (ModelSelection s : {ModelSelection::Ensemble, ModelSelection::SslMs}) a = a && avg_of(r, s, SslHpt) <= avg_of(r, s, RandomHp);
    for (ModelSelection s : {ModelSelection::Ensemble, ModelSelection::RandomModel, ModelSelection::SslMs}) {
      b = b && avg_of(r, s, Exhaustive) <= avg_of(r, s, SslHpt) && avg_of(r, s, SslHpt) <= avg_of(r, s, RandomHp);
    }
    ok_a += a;
    ok_b += b;
    std::printf("  rep %d: ", rep);
    for (std::size_t i = 0; i < 9; ++i) std::printf("%s%.4f", i ? " " : "", r.avg[i]);
    std::printf("  (a)=%d (b)=%d\n", a, b);

    if (rep == 0) {
      // Getting hyper-parameters for all six models of one series: network
      // inference against random_search(20) on the same training split.
      for (const auto& rec : split.test) {
        const auto& ts = *std::find_if(corpus.begin(), corpus.end(), [&](const TimeSeries& s) { return s.id() == rec.series_id; });
        const auto cfg = metadata::split_for(ts, std::nullopt);
        const auto train_part = train_test_split(ts, cfg.horizon).first;
        auto t1 = Clock::now();
        const auto fv = features::extract_features(train_part);
        feature_time += seconds_since(t1);
        t1 = Clock::now();
        for (ModelId id : kAllModels) (void)learners::predict_hparams(l.net(id), l.standardize(fv));
        ssl_time += seconds_since(t1);
        t1 = Clock::now();
        for (ModelId id : kAllModels) (void)tuning::random_search(id, train_part, default_space(id), 20, seed, cfg);
        search_time += seconds_since(t1);
        ++timed;
      }
    }
  }
  const double total = seconds_since(t0);
  std::printf("  mean avg_mape over reps:");
  for (std::size_t i = 0; i < 9; ++i) std::printf(" %s=%.4f", strategy_name(kAllStrategies[i]).c_str(), mean_avg[i]);
  std::printf("\n  INFO per-series seconds: ssl-hpt inference %.2e, feature extraction %.2e, random_search(20)x6 %.2e; "
              "ratio with features included %.3f\n",
              ssl_time / timed, feature_time / timed, search_time / timed, (ssl_time + feature_time) / search_time);
  Checks c;
  c.expect(ok_a >= 8, "(a) held in " + std::to_string(ok_a) + "/10");
  c.expect(ok_b >= 8, "(b) held in " + std::to_string(ok_b) + "/10");
  const double ratio = ssl_time / search_time;
  c.expect(ratio <= 1.0 / 6.0, "(c) inference/search ratio " + fmt("%.4f", ratio));
  c.expect(total <= 15 * 60, "runtime " + fmt("%.0f s", total));
  return c.outcome("(a) " + std::to_string(ok_a) + "/10, (b) " + std::to_string(ok_b) + "/10, (c) inference/search " +
                   fmt("%.4f", ratio) + " (features excluded)");
}

// ---- 7 ---------------------------------------------------------------------------

Outcome learnability() {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<FeatureVector> fvs;
  std::vector<ModelId> labels;
  for (std::size_t i = 0; i < 600; ++i) {
    const std::size_t n = 60 + gen() % 90;
    std::vector<double> y(n);
    ModelId label{};
    switch (i % 3) {
      case 0: {  // periodic
        std::vector<double> pat(12);
        for (double& v : pat) v = 10 * u(gen);
        y = oracle::tiled(n, pat, 0.0, 50 + 50 * u(gen));
        const auto e = oracle::white_noise(n, gen(), 0.05);
        for (std::size_t t = 0; t < n; ++t) y[t] += e[t];
        label = ModelId::SeasonalNaive;
        break;
      }
      case 1: {  // ramp
        const double slope = (0.5 + 2 * u(gen)) * (gen() % 2 ? 1 : -1);
        const auto e = oracle::white_noise(n, gen(), 0.5);
        for (std::size_t t = 0; t < n; ++t) y[t] = 500 + slope * static_cast<double>(t) + e[t];
        label = ModelId::HoltLinear;
        break;
      }
      default: {  // AR noise
        y = oracle::ar1(n, 0.2 + 0.6 * u(gen), gen());
        for (double& v : y) v += 30;
        label = ModelId::Arima;
      }
    }
    fvs.push_back(features::extract_features(oracle::series(y, 12)));
    labels.push_back(label);
  }
  const std::vector<FeatureVector> train_fv(fvs.begin(), fvs.begin() + 400);
  const auto st = learners::Standardizer::fit(train_fv);
  std::vector<learners::Input> x;
  for (const auto& fv : fvs) x.push_back(st.apply(fv));
  const auto forest = learners::train_forest(std::span(x).first(400), std::span(labels).first(400), learners::ForestConfig{});
  std::size_t hits = 0;
  for (std::size_t i = 400; i < 600; ++i) hits += learners::predict_model(forest, x[i]) == labels[i];
  const double acc = static_cast<double>(hits) / 200.0;
  Checks c;
  c.expect(acc >= 0.9, "held-out accuracy " + fmt("%.3f", acc));
  return c.outcome("held-out accuracy " + fmt("%.3f", acc) + " on 200 records");
}

// ---- 8 ---------------------------------------------------------------------------

Outcome forecaster_oracles() {
  Checks c;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto y = oracle::random_walk(100, s);
    const auto fit = models::fit(ModelId::Arima, oracle::series(y),
                                 {ModelId::Arima, {{"p", std::int64_t{0}}, {"d", std::int64_t{1}}, {"q", std::int64_t{0}}}});
    c.expect(fit.ok(), "arima(0,1,0) fit");
    if (!fit.ok()) continue;
    for (double f : models::predict(*fit.model, 10).point_forecasts) c.expect(f == y.back(), "arima(0,1,0) last value");
  }
  const auto sn = models::fit(ModelId::SeasonalNaive, oracle::series({9, 9, 9, 1, 2, 3, 4, 5, 6, 7, 8}, 4),
                              {ModelId::SeasonalNaive, {}});
  c.expect(sn.ok() && models::predict(*sn.model, 6).point_forecasts == std::vector<double>{5, 6, 7, 8, 5, 6},
           "seasonal naive tile");
  const std::vector<double> pat{1.0, -2.0, 0.5, 0.5};
  const auto y = oracle::tiled(48, pat, 0.5, 10);
  const auto cont = oracle::tiled(56, pat, 0.5, 10);
  const auto hw = models::fit(ModelId::HoltWinters, oracle::series(y, 4),
                              {ModelId::HoltWinters, {{"alpha", 0.5}, {"beta", 0.1}, {"gamma", 0.1}}});
  double worst = 0;
  if (hw.ok()) {
    const auto f = models::predict(*hw.model, 8).point_forecasts;
    for (std::size_t h = 0; h < 8; ++h) worst = std::max(worst, std::abs(f[h] - cont[48 + h]) / std::abs(cont[48 + h]));
  }
  c.expect(hw.ok() && worst <= 0.02, "holt-winters relative error " + fmt("%.2e", worst));
  return c.outcome("holt-winters max relative error " + fmt("%.1e", worst) + " at h <= 8");
}

// ---- 9 ---------------------------------------------------------------------------

Outcome matrix_factorization() {
  Checks c;
  std::mt19937_64 gen(9);
  std::normal_distribution<double> z(0, 1);
  const std::size_t n = 100, d = 40, k = 6;
  std::vector<std::vector<double>> u(n, std::vector<double>(d)), v0(k, std::vector<double>(d));
  for (auto& r : u) for (double& x : r) x = z(gen);
  for (auto& r : v0) for (double& x : r) x = z(gen);
  std::vector<std::vector<std::optional<double>>> a(n, std::vector<std::optional<double>>(k));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = std::inner_product(u[i].begin(), u[i].end(), v0[j].begin(), 0.0);
  const auto mf = learners::mf_fit(a, u, 0.0);
  double worst = 0;
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t f = 0; f < d; ++f) worst = std::max(worst, std::abs(mf.V[j][f] - v0[j][f]));
  c.expect(worst <= 1e-6, "recovery error " + fmt("%.2e", worst));
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> us(d);
    for (double& x : us) x = z(gen);
    std::vector<std::pair<double, std::size_t>> direct;
    for (std::size_t j = 0; j < k; ++j) direct.emplace_back(std::inner_product(us.begin(), us.end(), mf.V[j].begin(), 0.0), j);
    std::stable_sort(direct.begin(), direct.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    const auto rank = learners::mf_rank(mf, us);
    bool same = rank.size() == k;
    for (std::size_t j = 0; same && j < k; ++j) same = rank[j].column == direct[j].second;
    c.expect(same, "ranking case " + std::to_string(trial));
  }
  return c.outcome("max |V - V0| " + fmt("%.1e", worst) + ", 100 rankings");
}

// ---- 10 --------------------------------------------------------------------------

int cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::fprintf(stderr, "  tsmeta %s failed: %s", args[0].c_str(), err.str().c_str());
  return code;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome end_to_end_determinism() {
  const std::string r = oracle::scratch_dir("acceptance_e2e").string();
  Checks c;
  c.expect(cli({"generate", "--out-dir", r + "/series", "--count", "40", "--length", "96", "--seed", "5"}) == 0, "generate");
  c.expect(cli({"build-meta", "--input-dir", r + "/series", "--out", r + "/meta.jsonl", "--seed", "5", "--trials", "10",
                "--jobs", "4"}) == 0,
           "build-meta");
  c.expect(cli({"train", "--meta", r + "/meta.jsonl", "--out", r + "/learners", "--seed", "5", "--epochs", "50"}) == 0,
           "train");
  std::vector<std::string> reports;
  for (const char* j : {"1", "1", "4", "4"}) {
    const std::string dir = r + "/eval" + std::to_string(reports.size());
    c.expect(cli({"evaluate", "--meta", r + "/meta.jsonl", "--input-dir", r + "/series", "--learners", r + "/learners",
                  "--out-dir", dir, "--seed", "5", "--jobs", j}) == 0,
             "evaluate");
    reports.push_back(slurp(dir + "/report.json"));
  }
  c.expect(!reports[0].empty(), "report written");
  for (std::size_t i = 1; i < reports.size(); ++i) c.expect(reports[i] == reports[0], "run " + std::to_string(i) + " differs");
  return c.outcome("4 evaluate runs (--jobs 1,1,4,4), " + std::to_string(reports[0].size()) + "-byte report.json identical");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = no runtime limit of its own
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "feature suite", 60, feature_suite},
      {2, "40-feature schema", 0, schema},
      {3, "multi-task gradient check", 10, gradient_check},
      {4, "loss scale semantics", 0, loss_semantics},
      {5, "cost model", 0, cost_model},
      {6, "directional reproduction", 15 * 60, directional_reproduction},
      {7, "SSL-MS learnability", 0, learnability},
      {8, "forecaster oracles", 0, forecaster_oracles},
      {9, "matrix factorization", 0, matrix_factorization},
      {10, "end-to-end determinism", 0, end_to_end_determinism},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {Verdict::Fail, std::string("exception: ") + e.what()};
    }
    const double took = seconds_since(t0);
    if (cr.limit_s > 0 && took > cr.limit_s && o.verdict == Verdict::Pass) {
      o = {Verdict::Fail, o.detail + "; over the " + fmt("%.0f s", cr.limit_s) + " limit"};
    }
    failures += o.verdict == Verdict::Fail;
    std::printf("%s %2d %s: %s (%.1f s)\n", o.verdict == Verdict::Pass ? "PASS" : "FAIL", cr.id, cr.name,
                o.detail.c_str(), took);
    std::fflush(stdout);
  }
  std::printf("SKIP 11 M3-monthly comparison: M3 data is not reachable from this environment\n");
  return failures == 0 ? 0 : 1;
}
