#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tsmeta/csv.hpp"
#include "tsmeta/error.hpp"
#include "tsmeta/features.hpp"
#include "tsmeta/json_io.hpp"
#include "tsmeta/learners.hpp"
#include "tsmeta/metadata.hpp"
#include "tsmeta/pipeline.hpp"
#include "tsmeta/synthetic.hpp"
#include "tsmeta/tuning.hpp"

namespace tsmeta::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
  int period = 12;
  std::size_t horizon = 0;  // 0: per-series default
  std::size_t trials = tuning::kDefaultTrials;
  std::uint64_t seed = 0;
  double p = 0.75;
  double s = 1.0;
  std::size_t n_trees = 100;
  std::size_t max_depth = 12;
  std::size_t epochs = 200;
  double lr = 0.01;
  std::size_t batch = 32;
  double mf_lambda = 1.0;
  std::size_t jobs = 1;

  std::optional<std::size_t> horizon_opt() const {
    return horizon == 0 ? std::nullopt : std::optional<std::size_t>(horizon);
  }
};

// Run knobs settable from the config file and from flags (flags win). `jobs`
// is deliberately left out of the echo: it never changes results.
json echo(const RunConfig& c) {
  return {{"period", c.period},
          {"horizon", c.horizon == 0 ? json(nullptr) : json(c.horizon)},
          {"trials", c.trials},
          {"seed", c.seed},
          {"p", c.p},
          {"s", c.s},
          {"n_trees", c.n_trees},
          {"max_depth", c.max_depth},
          {"epochs", c.epochs},
          {"lr", c.lr},
          {"batch", c.batch},
          {"mf_lambda", c.mf_lambda}};
}

template <typename T>
void read_key(const json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j[key].get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::InvalidArgument, std::string("config key '") + key + "' has the wrong type");
  }
}

void apply_config_file(const fs::path& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, "config " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw Error(Errc::ParseError, "config must be a JSON object");
  static const std::set<std::string> known = {"period", "horizon", "trials", "seed",   "p",     "s",        "n_trees",
                                              "max_depth", "epochs", "lr",   "batch", "mf_lambda", "jobs"};
  for (const auto& [key, value] : j.items()) {
    if (known.count(key) == 0) throw Error(Errc::InvalidArgument, "unknown config key '" + key + "'");
  }
  read_key(j, "period", c.period);
  if (j.contains("horizon") && !j["horizon"].is_null()) read_key(j, "horizon", c.horizon);
  read_key(j, "trials", c.trials);
  read_key(j, "seed", c.seed);
  read_key(j, "p", c.p);
  read_key(j, "s", c.s);
  read_key(j, "n_trees", c.n_trees);
  read_key(j, "max_depth", c.max_depth);
  read_key(j, "epochs", c.epochs);
  read_key(j, "lr", c.lr);
  read_key(j, "batch", c.batch);
  read_key(j, "mf_lambda", c.mf_lambda);
  read_key(j, "jobs", c.jobs);
}

// Flags bound to a scratch config; after parsing, only the flags that were
// actually given overwrite the file/default values.
class Knobs {
 public:
  template <typename T>
  void add(CLI::App* app, const std::string& name, T RunConfig::*field, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + name, flags_.*field, help);
    setters_.push_back({opt, [this, field](RunConfig& c) { c.*field = flags_.*field; }});
    if (name == "seed") seed_opts_.push_back(opt);
  }

  void add_config(CLI::App* app) { config_opts_.push_back(app->add_option("--config", config_path_, "JSON config file")); }

  RunConfig resolve() const {
    RunConfig c;
    if (!config_path_.empty()) apply_config_file(config_path_, c);
    const bool seed_from_file = !config_path_.empty() && file_has_seed();
    const bool seed_from_flag =
        std::any_of(seed_opts_.begin(), seed_opts_.end(), [](const CLI::Option* o) { return o->count() > 0; });
    if (!seed_from_file && !seed_from_flag) {
      if (const char* env = std::getenv("TSMETA_SEED"); env != nullptr && *env != '\0') {
        try {
          std::size_t used = 0;
          c.seed = std::stoull(env, &used);
          if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::exception&) {
          throw Error(Errc::InvalidArgument, std::string("TSMETA_SEED is not an unsigned integer: ") + env);
        }
      }
    }
    for (const auto& [opt, set] : setters_) {
      if (opt->count() > 0) set(c);
    }
    return c;
  }

 private:
  bool file_has_seed() const {
    std::ifstream in(config_path_);
    try {
      return json::parse(in).contains("seed");
    } catch (const json::exception&) {
      return false;
    }
  }

  RunConfig flags_;
  std::string config_path_;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> setters_;
  std::vector<CLI::Option*> seed_opts_;
  std::vector<CLI::Option*> config_opts_;
};

json provenance(const RunConfig& c, const std::string& command, const json& inputs) {
  json cfg = echo(c);
  cfg["command"] = command;
  cfg["inputs"] = inputs;
  return {{"tool_version", TSMETA_VERSION}, {"config_echo", cfg}, {"seed", c.seed}};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  out << text;
}

void emit_json(const json& j, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_text(out_path, j.dump(2) + "\n");
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::vector<TimeSeries> read_series_dir(const fs::path& dir, int period, const std::vector<std::string>& ids) {
  std::vector<TimeSeries> out;
  for (const std::string& id : ids) out.push_back(read_series_csv(dir / (id + ".csv"), period));
  return out;
}

std::vector<TimeSeries> read_all_series(const fs::path& dir, int period, std::ostream& err) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<TimeSeries> out;
  for (const auto& f : files) {
    try {
      out.push_back(read_series_csv(f, period));
    } catch (const Error& e) {
      err << "skipped " << f.filename().string() << ": " << e.what() << '\n';
    }
  }
  return out;
}

std::vector<metadata::MetaRecord> read_meta(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path.string());
  return metadata::read_corpus(in);
}

HptMode parse_hpt(const std::string& s) {
  if (s == "ssl") return HptMode::SslHpt;
  if (s == "random") return HptMode::RandomHp;
  if (s == "exhaustive") return HptMode::Exhaustive;
  throw Error(Errc::InvalidArgument, "--hpt must be ssl, random or exhaustive");
}

learners::LearnerConfig learner_config(const RunConfig& c) {
  learners::LearnerConfig lc;
  lc.seed = c.seed;
  lc.forest.n_trees = c.n_trees;
  lc.forest.max_depth = c.max_depth;
  lc.mtl.s = c.s;
  lc.mtl.epochs = c.epochs;
  lc.mtl.lr = c.lr;
  lc.mtl.batch = c.batch;
  lc.mf_lambda = c.mf_lambda;
  return lc;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::SingularSystem:
    case Errc::AllModelsFailed:
      return kInternalError;
    default:
      return kInputError;
  }
}

// ---- subcommands -----------------------------------------------------------

struct Paths {
  std::string input, input_dir, out, out_dir, meta, learners_dir, model = "THETA", method = "random",
                                                                   strategy = "ssl", hpt = "ssl";
  std::size_t resolution = tuning::kDefaultGridResolution;
  std::size_t count = 400;
  std::size_t length = 120;
  std::vector<std::size_t> checkpoints;
};

int cmd_features(const RunConfig& c, const Paths& p, std::ostream& out) {
  const TimeSeries ts = read_series_csv(p.input, c.period);
  const FeatureVector fv = features::extract_features(ts);
  json j = {{"provenance", provenance(c, "features", {{"input", p.input}})},
            {"id", ts.id()},
            {"n", ts.size()},
            {"features", feature_values_to_json(fv)},
            {"mask", feature_mask_to_json(fv)}};
  emit_json(j, p.out, out);
  return kOk;
}

int cmd_tune(const RunConfig& c, const Paths& p, std::ostream& out) {
  const auto model = model_from_name(p.model);
  if (!model) throw Error(Errc::InvalidArgument, "--model: unknown model '" + p.model + "'");
  const TimeSeries ts = read_series_csv(p.input, c.period);
  const HyperParamSpace space = default_space(*model);
  const SplitConfig split = metadata::split_for(ts, c.horizon_opt());
  tuning::SearchResult r;
  if (p.method == "random") {
    r = tuning::random_search(*model, ts, space, c.trials, c.seed, split);
  } else if (p.method == "grid") {
    r = tuning::grid_search(*model, ts, space, p.resolution, split);
  } else {
    throw Error(Errc::InvalidArgument, "--method must be random or grid");
  }
  json trials = json::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"trial", t.trial_index},
                      {"params", params_to_json(t.assignment)},
                      {"mape", t.error ? json(*t.error) : json(nullptr)},
                      {"failure", t.failure}});
  }
  json j = {{"provenance", provenance(c, "tune", {{"input", p.input}, {"model", p.model}, {"method", p.method}})},
            {"id", ts.id()},
            {"model", p.model},
            {"horizon", split.horizon},
            {"best",
             {{"trial", r.best.trial_index},
              {"params", params_to_json(r.best.assignment)},
              {"mape", r.best.error ? json(*r.best.error) : json(nullptr)}}},
            {"trials", trials}};
  emit_json(j, p.out, out);
  return kOk;
}

int cmd_build_meta(const RunConfig& c, const Paths& p, std::ostream& err) {
  metadata::MetaConfig mc;
  mc.trials = c.trials;
  mc.seed = c.seed;
  mc.horizon = c.horizon_opt();
  const metadata::Corpus corpus = metadata::build_corpus(p.input_dir, c.period, mc, c.jobs);
  for (const std::string& s : corpus.skipped) err << "skipped " << s << '\n';
  const json prov = provenance(c, "build-meta", {{"input_dir", p.input_dir}});

  std::ostringstream lines;
  metadata::write_corpus(lines, corpus.records, {{"provenance", prov}});
  write_text(p.out, lines.str());

  json sidecar = {{"provenance", prov}, {"quarantined", corpus.quarantined}, {"skipped", corpus.skipped}};
  fs::path side(p.out);
  side.replace_extension(".quarantine.json");
  write_text(side, sidecar.dump(2) + "\n");

  if (corpus.records.empty() && corpus.quarantined.empty()) {
    err << "no usable series in " << p.input_dir << '\n';
    return kInputError;
  }
  return kOk;
}

int cmd_train(const RunConfig& c, const Paths& p) {
  const auto records = read_meta(p.meta);
  const metadata::MetaSplit split = metadata::split_meta(records, c.p, c.seed);
  learners::Learners l = learners::train_learners(split.train, learner_config(c), c.jobs);
  for (const auto& r : split.test) l.test_ids.push_back(r.series_id);
  std::sort(l.test_ids.begin(), l.test_ids.end());
  learners::save_learners(l, p.out, {{"provenance", provenance(c, "train", {{"meta", p.meta}})}});
  return kOk;
}

int cmd_forecast(const RunConfig& c, const Paths& p, std::ostream& out) {
  if (c.horizon == 0) throw Error(Errc::BadHorizon, "--horizon is required for forecast");
  const TimeSeries ts = read_series_csv(p.input, c.period);
  const learners::Learners l = learners::load_learners(p.learners_dir);
  json j = {{"provenance", provenance(c, "forecast",
                                      {{"input", p.input}, {"learners", p.learners_dir}, {"strategy", p.strategy},
                                       {"hpt", p.hpt}})},
            {"id", ts.id()},
            {"strategy", p.strategy},
            {"horizon", c.horizon}};
  if (p.strategy == "ssl") {
    const pipeline::AutoForecast f = pipeline::forecast_auto(ts, l, c.horizon);
    j["forecasts"] = f.forecast.point_forecasts;
    j["model"] = model_name(f.selected);
    j["params"] = params_to_json(f.selected_params);
    j["fallback"] = f.fallback;
    if (f.fallback) {
      j["fallback_model"] = model_name(f.forecast.model);
      j["failure"] = f.failure;
    }
  } else if (p.strategy == "ensemble") {
    pipeline::OnlineConfig oc{c.seed, c.trials, c.horizon_opt()};
    const pipeline::EnsembleForecast f = pipeline::forecast_ensemble(ts, l, c.horizon, parse_hpt(p.hpt), oc);
    j["forecasts"] = f.point_forecasts;
    j["model"] = "ENSEMBLE";
    json members = json::array();
    for (const auto& m : f.members) {
      members.push_back({{"model", model_name(m.model)}, {"params", params_to_json(m.params)},
                         {"forecasts", m.point_forecasts}});
    }
    j["members"] = members;
    json failures = json::object();
    for (const auto& [m, why] : f.failures) failures[std::string(model_name(m))] = why;
    j["failures"] = failures;
    j["fallback"] = false;
  } else {
    throw Error(Errc::InvalidArgument, "--strategy must be ssl or ensemble");
  }
  emit_json(j, p.out, out);
  return kOk;
}

int cmd_evaluate(const RunConfig& c, const Paths& p) {
  const auto records = read_meta(p.meta);
  const learners::Learners l = learners::load_learners(p.learners_dir);
  std::vector<metadata::MetaRecord> test;
  const std::set<std::string> test_ids(l.test_ids.begin(), l.test_ids.end());
  for (const auto& r : records) {
    if (test_ids.count(r.series_id) != 0) test.push_back(r);
  }
  if (test.empty()) throw Error(Errc::NoTrainingRows, "no meta records match the learners' test ids");
  std::vector<std::string> ids;
  for (const auto& r : test) ids.push_back(r.series_id);
  const auto series = read_series_dir(p.input_dir, c.period, ids);

  pipeline::EvalConfig ec;
  ec.seed = c.seed;
  ec.horizon = c.horizon_opt();
  ec.p = c.p;
  const pipeline::EvalReport report = pipeline::evaluate_methods(test, series, l, ec, c.jobs);

  const json prov = provenance(
      c, "evaluate", {{"meta", p.meta}, {"input_dir", p.input_dir}, {"learners", p.learners_dir}});
  const std::string prov_line = "# " + prov.dump() + "\n";
  const fs::path dir(p.out_dir);
  json rj = pipeline::report_to_json(report);
  rj["provenance"] = prov;
  write_text(dir / "report.json", rj.dump(2) + "\n");
  write_text(dir / "report.csv", prov_line + pipeline::report_to_csv(report));

  // Mean feature value per best-model label over the test records.
  std::ostringstream means;
  means << prov_line << "label,feature,mean,count\n";
  for (ModelId m : kAllModels) {
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& r : test) {
        if (r.best_model != m || !r.features.defined[f]) continue;
        sum += r.features.values[f];
        ++n;
      }
      if (n == 0) continue;
      means << model_name(m) << ',' << feature_names()[f] << ',' << fmt(sum / static_cast<double>(n)) << ',' << n
            << '\n';
    }
  }
  write_text(dir / "plot_feature_means.csv", means.str());

  std::ostringstream dist;
  dist << prov_line << "series_id,method,mape,failed\n";
  for (const auto& o : report.per_series) {
    for (std::size_t i = 0; i < kAllStrategies.size(); ++i) {
      dist << o.id << ',' << strategy_name(kAllStrategies[i]) << ',' << fmt(o.mape[i]) << ','
           << (o.failed[i] ? 1 : 0) << '\n';
    }
  }
  write_text(dir / "plot_mape_distribution.csv", dist.str());
  return kOk;
}

int cmd_consistency(const RunConfig& c, const Paths& p, std::ostream& out, std::ostream& err) {
  const learners::Learners l = learners::load_learners(p.learners_dir);
  std::vector<TimeSeries> series;
  if (!p.input.empty()) {
    series.push_back(read_series_csv(p.input, c.period));
  } else {
    series = read_all_series(p.input_dir, c.period, err);
  }
  const pipeline::CorpusConsistency cc = pipeline::consistency_corpus(series, p.checkpoints, l, c.jobs);
  json matrix = json::array();
  for (const auto& row : cc.change_pct) {
    json jr = json::array();
    for (const auto& v : row) jr.push_back(v ? json(*v) : json(nullptr));
    matrix.push_back(jr);
  }
  json per = json::array();
  for (std::size_t i = 0; i < cc.per_series.size(); ++i) {
    json labels = json::array();
    for (ModelId m : cc.per_series[i].labels) labels.push_back(model_name(m));
    per.push_back(labels);
  }
  json j = {{"provenance", provenance(c, "consistency",
                                      {{"input", p.input}, {"input_dir", p.input_dir}, {"learners", p.learners_dir},
                                       {"checkpoints", p.checkpoints}})},
            {"checkpoints", cc.checkpoints},
            {"n_series", cc.per_series.size()},
            {"change_pct", matrix},
            {"labels", per},
            {"skipped", cc.skipped}};
  emit_json(j, p.out, out);
  return kOk;
}

int cmd_generate(const RunConfig& c, const Paths& p) {
  synthetic::SyntheticConfig sc;
  sc.length = p.length;
  sc.period = c.period;
  const fs::path dir(p.out_dir);
  fs::create_directories(dir);
  for (const TimeSeries& ts : synthetic::generate_corpus(p.count, c.seed, sc)) {
    std::ostringstream s;
    write_series_csv(s, ts);
    write_text(dir / (ts.id() + ".csv"), s.str());
  }
  json prov = provenance(c, "generate", {{"count", p.count}, {"length", p.length}});
  write_text(dir / "provenance.json", prov.dump(2) + "\n");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Meta-learned model selection and hyper-parameter tuning for time series forecasting", "tsmeta"};
  app.set_version_flag("--version", TSMETA_VERSION);
  app.require_subcommand(1);

  Paths p;
  Knobs knobs;
  auto common = [&](CLI::App* sub, std::initializer_list<const char*> extra) {
    knobs.add_config(sub);
    knobs.add(sub, "seed", &RunConfig::seed, "Seed for every random stream (env TSMETA_SEED as fallback)");
    knobs.add(sub, "period", &RunConfig::period, "Seasonal period of the input series");
    knobs.add(sub, "jobs", &RunConfig::jobs, "Worker threads; results do not depend on it");
    for (std::string_view name : extra) {
      if (name == "horizon") knobs.add(sub, "horizon", &RunConfig::horizon, "Forecast / holdout horizon");
      if (name == "trials") knobs.add(sub, "trials", &RunConfig::trials, "Random-search trials per model");
      if (name == "p") knobs.add(sub, "p", &RunConfig::p, "Fraction of meta records used for training");
      if (name == "learner") {
        knobs.add(sub, "s", &RunConfig::s, "Regression-loss scale of the multi-task loss");
        knobs.add(sub, "n-trees", &RunConfig::n_trees, "Random forest size");
        knobs.add(sub, "max-depth", &RunConfig::max_depth, "Random forest depth limit");
        knobs.add(sub, "epochs", &RunConfig::epochs, "Multi-task network epochs");
        knobs.add(sub, "lr", &RunConfig::lr, "Multi-task network learning rate");
        knobs.add(sub, "batch", &RunConfig::batch, "Multi-task network mini-batch size");
        knobs.add(sub, "mf-lambda", &RunConfig::mf_lambda, "Ridge penalty of the matrix factorization");
      }
    }
  };

  CLI::App* features = app.add_subcommand("features", "Extract the 40 features of one series");
  features->add_option("--input", p.input, "Series CSV")->required();
  features->add_option("--out", p.out, "Output JSON (stdout if omitted)");
  common(features, {});

  CLI::App* tune = app.add_subcommand("tune", "Tune one model on one series");
  tune->add_option("--input", p.input, "Series CSV")->required();
  tune->add_option("--model", p.model, "Model id, e.g. THETA or ARIMA");
  tune->add_option("--method", p.method, "random or grid");
  tune->add_option("--resolution", p.resolution, "Grid points per continuous axis");
  tune->add_option("--out", p.out, "Output JSON (stdout if omitted)");
  common(tune, {"horizon", "trials"});

  CLI::App* build = app.add_subcommand("build-meta", "Build the meta-dataset from a directory of series");
  build->add_option("--input-dir", p.input_dir, "Directory of series CSVs")->required();
  build->add_option("--out", p.out, "Output JSON-lines file")->required();
  common(build, {"horizon", "trials"});

  CLI::App* train = app.add_subcommand("train", "Train the learners on a meta-dataset");
  train->add_option("--meta", p.meta, "Meta-dataset JSON-lines file")->required();
  train->add_option("--out", p.out, "Learner directory")->required();
  common(train, {"p", "learner"});

  CLI::App* forecast = app.add_subcommand("forecast", "Forecast one series with trained learners");
  forecast->add_option("--input", p.input, "Series CSV")->required();
  forecast->add_option("--learners", p.learners_dir, "Learner directory")->required();
  forecast->add_option("--strategy", p.strategy, "ssl or ensemble");
  forecast->add_option("--hpt", p.hpt, "Ensemble tuning: ssl, random or exhaustive");
  forecast->add_option("--out", p.out, "Output JSON (stdout if omitted)");
  common(forecast, {"horizon", "trials"});

  CLI::App* evaluate = app.add_subcommand("evaluate", "Compare the nine strategies on the held-out records");
  evaluate->add_option("--meta", p.meta, "Meta-dataset JSON-lines file")->required();
  evaluate->add_option("--input-dir", p.input_dir, "Directory of series CSVs")->required();
  evaluate->add_option("--learners", p.learners_dir, "Learner directory")->required();
  evaluate->add_option("--out-dir", p.out_dir, "Report directory")->required();
  common(evaluate, {"horizon", "p"});

  CLI::App* consistency = app.add_subcommand("consistency", "Model change rate across series prefixes");
  consistency->add_option("--input", p.input, "Single series CSV");
  consistency->add_option("--input-dir", p.input_dir, "Directory of series CSVs");
  consistency->add_option("--learners", p.learners_dir, "Learner directory")->required();
  consistency->add_option("--checkpoints", p.checkpoints, "Prefix lengths, e.g. 60,72,84")
      ->required()
      ->delimiter(',');
  consistency->add_option("--out", p.out, "Output JSON (stdout if omitted)");
  common(consistency, {});

  CLI::App* generate = app.add_subcommand("generate", "Write a seeded synthetic corpus of CSV series");
  generate->add_option("--out-dir", p.out_dir, "Output directory")->required();
  generate->add_option("--count", p.count, "Number of series");
  generate->add_option("--length", p.length, "Points per series");
  common(generate, {});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << TSMETA_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    const RunConfig c = knobs.resolve();
    if (c.jobs == 0) throw Error(Errc::InvalidArgument, "--jobs must be at least 1");
    if (*features) return cmd_features(c, p, out);
    if (*tune) return cmd_tune(c, p, out);
    if (*build) return cmd_build_meta(c, p, err);
    if (*train) return cmd_train(c, p);
    if (*forecast) return cmd_forecast(c, p, out);
    if (*evaluate) return cmd_evaluate(c, p);
    if (*consistency) {
      if (p.input.empty() == p.input_dir.empty()) {
        throw Error(Errc::InvalidArgument, "consistency takes exactly one of --input and --input-dir");
      }
      return cmd_consistency(c, p, out, err);
    }
    if (*generate) return cmd_generate(c, p);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace tsmeta::cli
