#include "tsmeta/metadata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "tsmeta/csv.hpp"
#include "tsmeta/error.hpp"
#include "tsmeta/features.hpp"
#include "tsmeta/json_io.hpp"
#include "tsmeta/parallel.hpp"
#include "tsmeta/rng.hpp"

namespace tsmeta::metadata {

SplitConfig split_for(const TimeSeries& ts, std::optional<std::size_t> horizon) {
  return SplitConfig{horizon.value_or(default_horizon(ts.size(), ts.period()))};
}

std::optional<ModelId> best_model_of(const std::array<ModelEntry, kNumModels>& per_model) {
  std::optional<ModelId> best;
  for (ModelId id : kAllModels) {
    const ModelEntry& e = per_model[model_index(id)];
    if (e.failed()) continue;
    if (!best || *e.mape < *per_model[model_index(*best)].mape) best = id;
  }
  return best;
}

std::array<HyperParamSpace, kNumModels> default_spaces() {
  std::array<HyperParamSpace, kNumModels> spaces;
  for (ModelId id : kAllModels) spaces[model_index(id)] = default_space(id);
  return spaces;
}

MetaRecord build_meta_record(const TimeSeries& ts, std::span<const HyperParamSpace> spaces,
                             const MetaConfig& cfg) {
  MetaRecord r;
  r.series_id = ts.id();
  r.features = features::extract_features(ts);
  const SplitConfig split = split_for(ts, cfg.horizon);
  for (const HyperParamSpace& space : spaces) {
    const tuning::SearchResult search =
        tuning::random_search(space.model, ts, space, cfg.trials, cfg.seed, split);
    ModelEntry& e = r.per_model[model_index(space.model)];
    e.best_params = search.best.assignment;
    e.mape = search.best.error;
  }
  r.best_model = best_model_of(r.per_model);
  return r;
}

MetaRecord build_meta_record(const TimeSeries& ts, const MetaConfig& cfg) {
  const auto spaces = default_spaces();
  return build_meta_record(ts, spaces, cfg);
}

Corpus build_corpus(const std::vector<TimeSeries>& series, const MetaConfig& cfg, std::size_t jobs) {
  std::vector<MetaRecord> built(series.size());
  parallel_for(series.size(), jobs, [&](std::size_t i) { built[i] = build_meta_record(series[i], cfg); });
  std::sort(built.begin(), built.end(),
            [](const MetaRecord& a, const MetaRecord& b) { return a.series_id < b.series_id; });
  Corpus corpus;
  for (MetaRecord& r : built) {
    if (r.quarantined()) {
      corpus.quarantined.push_back(r.series_id);
    } else {
      corpus.records.push_back(std::move(r));
    }
  }
  return corpus;
}

Corpus build_corpus(const std::filesystem::path& dir, int period, const MetaConfig& cfg,
                    std::size_t jobs) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<TimeSeries> series;
  std::vector<std::string> skipped;
  for (const auto& f : files) {
    try {
      series.push_back(read_series_csv(f, period));
    } catch (const Error& e) {
      skipped.push_back(f.filename().string() + ": " + e.what());
    }
  }
  Corpus corpus = build_corpus(series, cfg, jobs);
  corpus.skipped = std::move(skipped);
  return corpus;
}

nlohmann::json record_to_json(const MetaRecord& r) {
  nlohmann::json per_model = nlohmann::json::object();
  for (ModelId id : kAllModels) {
    const ModelEntry& e = r.entry(id);
    nlohmann::json m;
    m["params"] = params_to_json(e.best_params);
    m["mape"] = e.mape ? nlohmann::json(*e.mape) : nlohmann::json(nullptr);
    m["failed"] = e.failed();
    per_model[std::string(model_name(id))] = std::move(m);
  }
  nlohmann::json j;
  j["v"] = kSchemaVersion;
  j["id"] = r.series_id;
  j["features"] = feature_values_to_json(r.features);
  j["mask"] = feature_mask_to_json(r.features);
  j["per_model"] = std::move(per_model);
  j["best_model"] = r.best_model ? nlohmann::json(model_name(*r.best_model)) : nlohmann::json(nullptr);
  return j;
}

MetaRecord record_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("v")) throw Error(Errc::CorruptFile, "meta record without schema version");
  if (j["v"] != kSchemaVersion) {
    throw Error(Errc::SchemaMismatch, "meta record version " + j["v"].dump() + ", expected v1");
  }
  try {
    MetaRecord r;
    r.series_id = j.at("id").get<std::string>();
    r.features = features_from_json(j.at("features"), j.at("mask"));
    const nlohmann::json& pm = j.at("per_model");
    for (ModelId id : kAllModels) {
      const nlohmann::json& m = pm.at(std::string(model_name(id)));
      ModelEntry& e = r.per_model[model_index(id)];
      e.best_params = params_from_json(id, m.at("params"));
      if (!m.at("failed").get<bool>()) e.mape = m.at("mape").get<double>();
    }
    const nlohmann::json& best = j.at("best_model");
    if (!best.is_null()) {
      r.best_model = model_from_name(best.get<std::string>());
      if (!r.best_model) throw Error(Errc::CorruptFile, "unknown model " + best.dump());
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::CorruptFile, std::string("meta record: ") + e.what());
  }
}

void write_corpus(std::ostream& out, const std::vector<MetaRecord>& records,
                  const nlohmann::json& header) {
  nlohmann::json h = header;
  h["kind"] = "header";
  h["v"] = kSchemaVersion;
  out << h.dump() << '\n';
  for (const MetaRecord& r : records) out << record_to_json(r).dump() << '\n';
}

std::vector<MetaRecord> read_corpus(std::istream& in) {
  std::vector<MetaRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::CorruptFile, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (j.is_object() && j.value("kind", "") == "header") continue;
    records.push_back(record_from_json(j));
  }
  return records;
}

MetaSplit split_meta(const std::vector<MetaRecord>& records, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidArgument, "split fraction must lie in (0, 1)");
  const std::size_t n = records.size();
  const auto n_train = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  if (n_train == 0 || n_train >= n) {
    throw Error(Errc::DegenerateSplit, std::to_string(n_train) + "/" + std::to_string(n - std::min(n, n_train)) +
                                           " split of " + std::to_string(n) + " records");
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  KeyedRng rng(stream_key({seed, hash_string("split_meta")}));
  for (std::size_t i = n; i-- > 1;) std::swap(order[i], order[rng.below(i + 1)]);
  MetaSplit out;
  for (std::size_t i = 0; i < n; ++i) {
    (i < n_train ? out.train : out.test).push_back(records[order[i]]);
  }
  return out;
}

double per_series_cost(Strategy s, const CostModel& cm, std::size_t n_models) {
  const double models = s.selection == ModelSelection::Ensemble ? static_cast<double>(n_models) : 1.0;
  const double tuning = s.hpt == HptMode::Exhaustive ? cm.c : cm.unit;
  return models * tuning;
}

double estimated_cost(Strategy s, double p, std::size_t n_series, const CostModel& cm,
                      std::size_t n_models) {
  const double models = s.selection == ModelSelection::Ensemble ? static_cast<double>(n_models) : 1.0;
  const double n = static_cast<double>(n_series);
  switch (s.hpt) {
    case HptMode::Exhaustive: return models * cm.c * n;
    case HptMode::RandomHp: return models * cm.unit * n;
    case HptMode::SslHpt: return models * (p * cm.c * n + (1.0 - p) * cm.unit * n);
  }
  return 0.0;
}

}  // namespace tsmeta::metadata
