#include "tsmeta/learners.hpp"

#include <fstream>
#include <sstream>

#include "tsmeta/error.hpp"
#include "tsmeta/parallel.hpp"
#include "tsmeta/rng.hpp"

namespace tsmeta::learners {

nlohmann::json config_to_json(const LearnerConfig& cfg) {
  return {
      {"seed", cfg.seed},
      {"n_trees", cfg.forest.n_trees},
      {"max_depth", cfg.forest.max_depth},
      {"features_per_split", cfg.forest.features_per_split},
      {"s", cfg.mtl.s},
      {"epochs", cfg.mtl.epochs},
      {"lr", cfg.mtl.lr},
      {"batch", cfg.mtl.batch},
      {"momentum", cfg.mtl.momentum},
      {"head_width", cfg.mtl.head_width},
      {"fit_mf", cfg.fit_mf},
      {"mf_lambda", cfg.mf_lambda},
  };
}

LearnerConfig config_from_json(const nlohmann::json& j) {
  LearnerConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.forest.n_trees = j.value("n_trees", cfg.forest.n_trees);
  cfg.forest.max_depth = j.value("max_depth", cfg.forest.max_depth);
  cfg.forest.features_per_split = j.value("features_per_split", cfg.forest.features_per_split);
  cfg.mtl.s = j.value("s", cfg.mtl.s);
  cfg.mtl.epochs = j.value("epochs", cfg.mtl.epochs);
  cfg.mtl.lr = j.value("lr", cfg.mtl.lr);
  cfg.mtl.batch = j.value("batch", cfg.mtl.batch);
  cfg.mtl.momentum = j.value("momentum", cfg.mtl.momentum);
  cfg.mtl.head_width = j.value("head_width", cfg.mtl.head_width);
  cfg.fit_mf = j.value("fit_mf", cfg.fit_mf);
  cfg.mf_lambda = j.value("mf_lambda", cfg.mf_lambda);
  return cfg;
}

Learners train_learners(const std::vector<metadata::MetaRecord>& train, const LearnerConfig& cfg, std::size_t jobs) {
  std::vector<FeatureVector> fvs;
  for (const auto& r : train) {
    if (!r.quarantined()) fvs.push_back(r.features);
  }
  Learners l;
  l.config = cfg;
  l.standardizer = Standardizer::fit(fvs);

  std::vector<Input> x;
  std::vector<ModelId> y;
  for (const auto& r : train) {
    if (r.quarantined()) continue;
    x.push_back(l.standardizer.apply(r.features));
    y.push_back(*r.best_model);
    l.train_ids.push_back(r.series_id);
  }
  ForestConfig fc = cfg.forest;
  fc.seed = stream_key({cfg.seed, cfg.forest.seed});
  l.forest = train_forest(x, y, fc);

  const auto spaces = metadata::default_spaces();
  parallel_for(kNumModels, jobs, [&](std::size_t k) {
    std::vector<Input> xm;
    std::vector<Target> tm;
    std::vector<HeadSpec> heads = init_net(spaces[k], 0, 1).heads;
    for (const auto& r : train) {
      const metadata::ModelEntry& e = r.per_model[k];
      if (r.quarantined() || e.failed()) continue;
      xm.push_back(l.standardizer.apply(r.features));
      tm.push_back(encode_target(e.best_params, heads));
    }
    MtlConfig mc = cfg.mtl;
    mc.seed = stream_key({cfg.seed, cfg.mtl.seed});
    if (xm.empty()) {
      // No usable labels for this model: keep the untrained net so predictions stay defined.
      l.nets[k] = init_net(spaces[k], mc.seed, mc.head_width);
    } else {
      l.nets[k] = train_mtl(spaces[k], xm, tm, mc).net;
    }
  });

  if (cfg.fit_mf) {
    std::vector<std::vector<std::optional<double>>> a;
    std::vector<std::vector<double>> u;
    for (std::size_t i = 0; i < x.size(); ++i) u.emplace_back(x[i].begin(), x[i].end());
    for (const auto& r : train) {
      if (r.quarantined()) continue;
      std::vector<std::optional<double>> row;
      for (const auto& e : r.per_model) row.push_back(e.mape);
      a.push_back(std::move(row));
    }
    l.mf = mf_fit(a, u, cfg.mf_lambda);
  }
  return l;
}

namespace {

void write_json(const std::filesystem::path& p, const nlohmann::json& j) {
  std::ofstream out(p);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + p.string());
  out << j.dump() << '\n';
}

nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::CorruptFile, "missing " + p.filename().string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::CorruptFile, p.filename().string() + ": " + e.what());
  }
}

std::string net_file(ModelId id) { return "mtl_" + std::string(model_name(id)) + ".json"; }

}  // namespace

void save_learners(const Learners& l, const std::filesystem::path& dir, const nlohmann::json& extra) {
  std::filesystem::create_directories(dir);
  write_json(dir / "standardizer.json", l.standardizer.to_json());
  write_json(dir / "forest.json", forest_to_json(l.forest));
  for (ModelId id : kAllModels) write_json(dir / net_file(id), net_to_json(l.net(id)));
  if (l.mf) {
    write_json(dir / "mf.json", mf_to_json(*l.mf));
  } else {
    std::filesystem::remove(dir / "mf.json");
  }
  nlohmann::json manifest = extra.is_object() ? extra : nlohmann::json::object();
  manifest["v"] = metadata::kSchemaVersion;
  manifest["kind"] = "learners";
  manifest["learner_config"] = config_to_json(l.config);
  manifest["standardized_features"] = true;
  manifest["has_mf"] = l.mf.has_value();
  manifest["train_ids"] = l.train_ids;
  manifest["test_ids"] = l.test_ids;
  write_json(dir / "manifest.json", manifest);
}

Learners load_learners(const std::filesystem::path& dir) {
  const nlohmann::json manifest = read_json(dir / "manifest.json");
  if (!manifest.is_object() || !manifest.contains("v")) throw Error(Errc::CorruptFile, "manifest without version");
  if (manifest["v"] != metadata::kSchemaVersion) {
    throw Error(Errc::SchemaMismatch, "learner directory version " + manifest["v"].dump());
  }
  Learners l;
  try {
    l.config = config_from_json(manifest.at("learner_config"));
    l.train_ids = manifest.at("train_ids").get<std::vector<std::string>>();
    l.test_ids = manifest.at("test_ids").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::CorruptFile, std::string("manifest: ") + e.what());
  }
  l.standardizer = Standardizer::from_json(read_json(dir / "standardizer.json"));
  l.forest = forest_from_json(read_json(dir / "forest.json"));
  for (ModelId id : kAllModels) {
    MultiTaskNet net = net_from_json(read_json(dir / net_file(id)));
    if (net.model != id) throw Error(Errc::CorruptFile, net_file(id) + " holds another model");
    l.nets[model_index(id)] = std::move(net);
  }
  if (manifest.value("has_mf", false)) l.mf = mf_from_json(read_json(dir / "mf.json"));
  return l;
}

}  // namespace tsmeta::learners
