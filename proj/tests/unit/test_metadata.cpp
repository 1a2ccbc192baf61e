#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tsmeta/csv.hpp"
#include "tsmeta/error.hpp"
#include "tsmeta/features.hpp"
#include "tsmeta/metadata.hpp"

using namespace tsmeta;
using namespace tsmeta::metadata;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no tsmeta::Error thrown";
  return Errc::InvalidArgument;
}

std::vector<MetaRecord> fake_records(std::size_t n) {
  std::vector<MetaRecord> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].series_id = "r" + std::to_string(1000 + i);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_csv(const std::filesystem::path& p, const TimeSeries& ts) {
  std::ofstream out(p);
  write_series_csv(out, ts);
}

}  // namespace

TEST(BestModel, PeriodicSeriesPicksAPerfectModel) {
  const auto ts = oracle::series(oracle::tiled(60, {3, 8, 1, 5}, 0.0, 20), 4, "periodic");
  const MetaRecord r = build_meta_record(ts, MetaConfig{20, 1, std::nullopt});
  EXPECT_NEAR(*r.entry(ModelId::SeasonalNaive).mape, 0.0, 1e-9);
  // Holt-Winters initialised from two exact cycles is also perfect here, and
  // it sorts first, so the tie rule hands it the label.
  EXPECT_NEAR(*r.entry(*r.best_model).mape, 0.0, 1e-9);
  for (ModelId id : kAllModels) {
    if (id < *r.best_model) EXPECT_TRUE(r.entry(id).failed() || *r.entry(id).mape > 0.0) << model_name(id);
  }
  EXPECT_LE(*r.best_model, ModelId::SeasonalNaive);
}

TEST(BestModel, TieGoesToSmallerName) {
  std::array<ModelEntry, kNumModels> pm{};
  for (auto& e : pm) e.mape = 0.5;
  pm[model_index(ModelId::Arima)].mape.reset();
  EXPECT_EQ(best_model_of(pm), ModelId::HoltLinear);
  pm[model_index(ModelId::Theta)].mape = 0.1;
  pm[model_index(ModelId::Stlf)].mape = 0.1;
  EXPECT_EQ(best_model_of(pm), ModelId::Stlf);
  EXPECT_LT(model_name(ModelId::Stlf), model_name(ModelId::Theta));
}

TEST(BestModel, AllFailedIsQuarantined) {
  EXPECT_FALSE(best_model_of(std::array<ModelEntry, kNumModels>{}).has_value());
}

TEST(BestModel, InvariantUnderPositiveRescaling) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::array<ModelEntry, kNumModels> pm{};
    for (auto& e : pm) {
      if (u(gen) < 0.8) e.mape = std::round(u(gen) * 20) / 20;  // coarse values force ties
    }
    const double k = std::exp(6 * u(gen) - 3);
    auto scaled = pm;
    for (auto& e : scaled) {
      if (e.mape) *e.mape *= k;
    }
    EXPECT_EQ(best_model_of(pm), best_model_of(scaled));
  }
}

TEST(BuildMetaRecord, MatchesStandaloneSearches) {
  auto y = oracle::tiled(72, {5, 2, -1, -6}, 0.4, 40);
  const auto e = oracle::white_noise(72, 9, 1.0);
  for (std::size_t t = 0; t < y.size(); ++t) y[t] += e[t];
  const auto ts = oracle::series(y, 4, "compose");
  const MetaConfig cfg{20, 77, std::nullopt};
  const MetaRecord r = build_meta_record(ts, cfg);
  const SplitConfig split = split_for(ts, std::nullopt);
  for (ModelId id : kAllModels) {
    const auto direct = tuning::random_search(id, ts, default_space(id), 20, 77, split);
    EXPECT_EQ(r.entry(id).mape, direct.best.error) << model_name(id);
    EXPECT_EQ(r.entry(id).best_params, direct.best.assignment) << model_name(id);
  }
  EXPECT_EQ(r.features, features::extract_features(ts));
}

TEST(Persistence, RecordRoundTrip) {
  const auto ts = oracle::series(oracle::ar1(60, 0.5, 2), 12, "rt");
  const MetaRecord r = build_meta_record(ts, MetaConfig{5, 3, std::nullopt});
  const auto j = record_to_json(r);
  EXPECT_EQ(j["v"], "v1");
  EXPECT_EQ(j["features"].size(), kNumFeatures);
  EXPECT_EQ(j["per_model"].size(), kNumModels);
  const MetaRecord back = record_from_json(j);
  EXPECT_EQ(record_to_json(back).dump(), j.dump());
  EXPECT_EQ(back.features, r.features);
  EXPECT_EQ(back.best_model, r.best_model);

  auto bad = j;
  bad["v"] = "v0";
  EXPECT_EQ(code_of([&] { record_from_json(bad); }), Errc::SchemaMismatch);
  bad = j;
  bad.erase("per_model");
  EXPECT_EQ(code_of([&] { record_from_json(bad); }), Errc::CorruptFile);
}

TEST(BuildCorpus, ShapeSkipAndDeterminism) {
  const auto dir = oracle::scratch_dir("corpus");
  write_csv(dir / "b.csv", oracle::series(oracle::ar1(48, 0.6, 1), 12, "b"));
  write_csv(dir / "a.csv", oracle::series(oracle::tiled(48, {1, 2, 3, 4}, 0.1, 10), 12, "a"));
  {
    std::ofstream bad(dir / "c.csv");
    bad << "timestamp,value\n1,2\nnot a row\n";
  }
  const MetaConfig cfg{8, 5, std::nullopt};
  const Corpus c = build_corpus(dir, 12, cfg, 1);
  ASSERT_EQ(c.records.size(), 2u);
  EXPECT_EQ(c.records[0].series_id, "a");
  EXPECT_EQ(c.records[1].series_id, "b");
  ASSERT_EQ(c.skipped.size(), 1u);
  EXPECT_NE(c.skipped[0].find("c.csv"), std::string::npos);

  std::ostringstream first, second, parallel;
  write_corpus(first, c.records, {{"kind", "header"}});
  write_corpus(second, build_corpus(dir, 12, cfg, 1).records, {{"kind", "header"}});
  write_corpus(parallel, build_corpus(dir, 12, cfg, 3).records, {{"kind", "header"}});
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(first.str(), parallel.str());

  const std::string text = first.str();
  std::istringstream in(text);
  const auto lines = std::count(text.begin(), text.end(), '\n');
  EXPECT_EQ(lines, 3);  // header + 2 records
  const auto back = read_corpus(in);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(record_to_json(back[i]), record_to_json(c.records[i]));
}

TEST(BuildCorpus, TruncatedFileIsCorrupt) {
  const auto ts = oracle::series(oracle::ar1(48, 0.6, 1), 12, "t");
  std::ostringstream out;
  write_corpus(out, {build_meta_record(ts, MetaConfig{3, 1, std::nullopt})}, {{"kind", "header"}});
  const std::string text = out.str();
  std::istringstream in(text.substr(0, text.size() - 20));
  EXPECT_EQ(code_of([&] { read_corpus(in); }), Errc::CorruptFile);
}

TEST(SplitMeta, Sizes) {
  const auto recs = fake_records(100);
  const auto s = split_meta(recs, 0.25, 1);
  EXPECT_EQ(s.train.size(), 25u);
  EXPECT_EQ(s.test.size(), 75u);
  EXPECT_EQ(split_meta(recs, 0.75, 1).train.size(), 75u);
}

TEST(SplitMeta, Guards) {
  const auto recs = fake_records(100);
  EXPECT_EQ(code_of([&] { split_meta(recs, 0.999, 1); }), Errc::DegenerateSplit);
  EXPECT_EQ(code_of([&] { split_meta(recs, 0.0, 1); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([&] { split_meta(recs, 1.0, 1); }), Errc::InvalidArgument);
}

TEST(SplitMeta, SeededPartition) {
  const auto recs = fake_records(57);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = split_meta(recs, 0.6, seed);
    const auto b = split_meta(recs, 0.6, seed);
    std::multiset<std::string> ids;
    for (const auto& r : a.train) ids.insert(r.series_id);
    for (const auto& r : a.test) ids.insert(r.series_id);
    EXPECT_EQ(ids.size(), 57u);
    EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()).size(), 57u);
    ASSERT_EQ(a.train.size(), b.train.size());
    for (std::size_t i = 0; i < a.train.size(); ++i) EXPECT_EQ(a.train[i].series_id, b.train[i].series_id);
  }
  EXPECT_NE(split_meta(recs, 0.5, 1).train[0].series_id + split_meta(recs, 0.5, 1).train[1].series_id,
            split_meta(recs, 0.5, 2).train[0].series_id + split_meta(recs, 0.5, 2).train[1].series_id);
}

TEST(Cost, RuntimeColumnMatchesTable) {
  const std::vector<double> want{120, 6, 6, 20, 1, 1, 20, 1, 1};
  for (std::size_t i = 0; i < kAllStrategies.size(); ++i) {
    EXPECT_EQ(per_series_cost(kAllStrategies[i], CostModel{}), want[i]) << strategy_name(kAllStrategies[i]);
  }
}

TEST(Cost, SslLimits) {
  const Strategy ssl{ModelSelection::SslMs, HptMode::SslHpt};
  EXPECT_DOUBLE_EQ(estimated_cost(ssl, 1.0, 100, CostModel{}), 2000.0);
  EXPECT_DOUBLE_EQ(estimated_cost(ssl, 0.0, 100, CostModel{}), 100.0);
  EXPECT_DOUBLE_EQ(estimated_cost(ssl, 0.75, 100, CostModel{}), 0.75 * 20 * 100 + 0.25 * 100);
}

TEST(Cost, LinearInN) {
  for (Strategy s : kAllStrategies) {
    for (double p : {0.1, 0.5, 0.9}) {
      const double one = estimated_cost(s, p, 1, CostModel{});
      for (std::size_t n : {2u, 17u, 400u}) EXPECT_NEAR(estimated_cost(s, p, n, CostModel{}), n * one, 1e-9 * n * one);
    }
  }
}
