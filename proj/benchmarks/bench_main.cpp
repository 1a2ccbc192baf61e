#include <benchmark/benchmark.h>

#include "tsmeta/features.hpp"
#include "tsmeta/learners.hpp"
#include "tsmeta/metadata.hpp"
#include "tsmeta/models.hpp"
#include "tsmeta/synthetic.hpp"
#include "tsmeta/tuning.hpp"

namespace {

using namespace tsmeta;

const std::vector<TimeSeries>& corpus() {
  static const auto c = synthetic::generate_corpus(48, 7);
  return c;
}

// Small enough to train in a couple of seconds; the timings below only
// depend on the network and forest shapes, not on how well they fit.
const learners::Learners& trained() {
  static const learners::Learners l = [] {
    metadata::MetaConfig mc;
    mc.trials = 3;
    mc.seed = 7;
    const auto meta = metadata::build_corpus(corpus(), mc);
    learners::LearnerConfig cfg;
    cfg.forest.n_trees = 100;
    cfg.mtl.epochs = 5;
    return learners::train_learners(meta.records, cfg);
  }();
  return l;
}

void BM_ExtractFeatures(benchmark::State& state) {
  const auto& ts = corpus()[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(features::extract_features(ts));
}
BENCHMARK(BM_ExtractFeatures)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_FitPredict(benchmark::State& state) {
  const auto id = static_cast<ModelId>(state.range(0));
  const auto& ts = corpus()[0];
  KeyedRng rng(1);
  const auto params = tuning::draw_assignment(default_space(id), rng);
  for (auto _ : state) {
    auto fo = models::fit(id, ts, params);
    if (fo.ok()) benchmark::DoNotOptimize(models::predict(*fo.model, 12));
  }
  state.SetLabel(std::string(model_name(id)));
}
BENCHMARK(BM_FitPredict)->DenseRange(0, static_cast<int>(kNumModels) - 1)->Unit(benchmark::kMicrosecond);

void BM_RandomSearch(benchmark::State& state) {
  const auto id = static_cast<ModelId>(state.range(0));
  const auto& ts = corpus()[1];
  const auto cfg = metadata::split_for(ts, std::nullopt);
  for (auto _ : state)
    benchmark::DoNotOptimize(tuning::random_search(id, ts, default_space(id), 20, 3, cfg));
  state.SetLabel(std::string(model_name(id)));
}
BENCHMARK(BM_RandomSearch)->DenseRange(0, static_cast<int>(kNumModels) - 1)->Unit(benchmark::kMillisecond);

void BM_ForestPredict(benchmark::State& state) {
  const auto& l = trained();
  const auto x = l.standardize(features::extract_features(corpus()[2]));
  for (auto _ : state) benchmark::DoNotOptimize(predict_model(l.forest, x));
}
BENCHMARK(BM_ForestPredict);

void BM_MtlPredict(benchmark::State& state) {
  const auto& l = trained();
  const auto x = l.standardize(features::extract_features(corpus()[2]));
  const auto id = static_cast<ModelId>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(predict_hparams(l.net(id), x));
  state.SetLabel(std::string(model_name(id)));
}
BENCHMARK(BM_MtlPredict)->DenseRange(0, static_cast<int>(kNumModels) - 1);

}  // namespace

BENCHMARK_MAIN();
