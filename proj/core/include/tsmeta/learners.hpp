#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsmeta/forest.hpp"
#include "tsmeta/metadata.hpp"
#include "tsmeta/mf.hpp"
#include "tsmeta/mtl.hpp"
#include "tsmeta/standardizer.hpp"

namespace tsmeta::learners {

struct LearnerConfig {
  ForestConfig forest;
  MtlConfig mtl;
  bool fit_mf = true;
  double mf_lambda = 1.0;
  std::uint64_t seed = 0;  // folded into the forest and network seeds

  friend bool operator==(const LearnerConfig&, const LearnerConfig&) = default;
};

nlohmann::json config_to_json(const LearnerConfig& cfg);
LearnerConfig config_from_json(const nlohmann::json& j);

/// Everything the online paths need: feature scaling, the model classifier,
/// one hyper-parameter network per model and the optional recommender.
struct Learners {
  Standardizer standardizer;
  RandomForest forest;
  std::array<MultiTaskNet, kNumModels> nets;
  std::optional<MFModel> mf;
  LearnerConfig config;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;

  const MultiTaskNet& net(ModelId id) const { return nets[model_index(id)]; }
  Input standardize(const FeatureVector& fv) const { return standardizer.apply(fv); }
};

/// Fits all learners on `train`. Networks for different models train on up
/// to `jobs` threads; the result does not depend on `jobs`.
Learners train_learners(const std::vector<metadata::MetaRecord>& train, const LearnerConfig& cfg,
                        std::size_t jobs = 1);

/// Directory layout: standardizer.json, forest.json, mtl_<MODEL>.json for
/// every model, mf.json when present, manifest.json. `extra` is merged into
/// the manifest (provenance).
void save_learners(const Learners& l, const std::filesystem::path& dir, const nlohmann::json& extra = {});
/// Throws Error(SchemaMismatch) on a version mismatch and Error(CorruptFile)
/// on missing, truncated or inconsistent files.
Learners load_learners(const std::filesystem::path& dir);

}  // namespace tsmeta::learners
