#include "tsmeta/forest.hpp"

#include <algorithm>
#include <numeric>

#include "tsmeta/error.hpp"
#include "tsmeta/metadata.hpp"
#include "tsmeta/rng.hpp"

namespace tsmeta::learners {

ModelId argmax_class(const ClassCounts& counts) noexcept {
  std::size_t best = 0;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] > counts[best]) best = k;
  }
  return kAllModels[best];
}

const TreeNode& DecisionTree::leaf(const Input& x) const {
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const TreeNode& n = nodes[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes[i];
}

ModelId DecisionTree::predict(const Input& x) const { return argmax_class(leaf(x).counts); }

namespace {

double gini(const ClassCounts& c, std::uint32_t total) {
  if (total == 0) return 0.0;
  double s = 0.0;
  for (std::uint32_t k : c) {
    const double p = static_cast<double>(k) / total;
    s += p * p;
  }
  return 1.0 - s;
}

class TreeBuilder {
 public:
  TreeBuilder(std::span<const Input> x, std::span<const ModelId> y, const ForestConfig& cfg, KeyedRng& rng)
      : x_(x), y_(y), cfg_(cfg), rng_(rng) {}

  DecisionTree build(std::vector<std::size_t> sample) {
    grow(sample, 0);
    return std::move(tree_);
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;
  };

  std::int32_t grow(std::vector<std::size_t>& idx, std::size_t depth) {
    const auto self = static_cast<std::int32_t>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    ClassCounts counts{};
    for (std::size_t i : idx) ++counts[model_index(y_[i])];
    tree_.nodes[self].counts = counts;

    const bool pure = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1;
    if (pure || idx.size() <= 1 || depth >= cfg_.max_depth) return self;

    const Split s = best_split(idx);
    if (s.feature < 0) return self;

    std::vector<std::size_t> left, right;
    for (std::size_t i : idx) {
      (x_[i][static_cast<std::size_t>(s.feature)] <= s.threshold ? left : right).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();
    const std::int32_t l = grow(left, depth + 1);
    const std::int32_t r = grow(right, depth + 1);
    TreeNode& node = tree_.nodes[self];
    node.feature = s.feature;
    node.threshold = s.threshold;
    node.left = l;
    node.right = r;
    return self;
  }

  Split best_split(const std::vector<std::size_t>& idx) {
    // Partial Fisher-Yates: the first m entries are the sampled features.
    std::array<std::size_t, kNumFeatures> feats;
    std::iota(feats.begin(), feats.end(), std::size_t{0});
    const std::size_t m = std::min(cfg_.features_per_split, kNumFeatures);
    for (std::size_t k = 0; k < m; ++k) {
      std::swap(feats[k], feats[k + rng_.below(kNumFeatures - k)]);
    }

    Split best;
    const auto total = static_cast<std::uint32_t>(idx.size());
    std::vector<std::pair<double, std::size_t>> col(idx.size());
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t f = feats[k];
      for (std::size_t j = 0; j < idx.size(); ++j) col[j] = {x_[idx[j]][f], model_index(y_[idx[j]])};
      std::sort(col.begin(), col.end());
      ClassCounts left{}, right{};
      for (const auto& [v, c] : col) ++right[c];
      for (std::size_t j = 0; j + 1 < col.size(); ++j) {
        ++left[col[j].second];
        --right[col[j].second];
        if (col[j].first == col[j + 1].first) continue;
        const auto nl = static_cast<std::uint32_t>(j + 1);
        const double imp = (nl * gini(left, nl) + (total - nl) * gini(right, total - nl)) / total;
        if (best.feature < 0 || imp < best.impurity) {
          best.feature = static_cast<int>(f);
          best.threshold = 0.5 * (col[j].first + col[j + 1].first);
          best.impurity = imp;
        }
      }
    }
    return best;
  }

  std::span<const Input> x_;
  std::span<const ModelId> y_;
  const ForestConfig& cfg_;
  KeyedRng& rng_;
  DecisionTree tree_;
};

}  // namespace

RandomForest train_forest(std::span<const Input> x, std::span<const ModelId> y, const ForestConfig& cfg) {
  if (x.size() != y.size()) throw Error(Errc::LengthMismatch, "forest inputs and labels differ in length");
  if (x.empty()) throw Error(Errc::NoTrainingRows, "forest needs at least one record");
  RandomForest forest;
  forest.config = cfg;
  if (std::all_of(y.begin(), y.end(), [&](ModelId m) { return m == y.front(); })) {
    forest.constant_label = y.front();
    return forest;
  }
  forest.trees.reserve(cfg.n_trees);
  const std::size_t n = x.size();
  for (std::size_t t = 0; t < cfg.n_trees; ++t) {
    KeyedRng rng(stream_key({cfg.seed, hash_string("forest"), t}));
    std::vector<std::size_t> sample(n);
    for (std::size_t& s : sample) s = rng.below(n);
    forest.trees.push_back(TreeBuilder(x, y, cfg, rng).build(std::move(sample)));
  }
  return forest;
}

ClassCounts vote_counts(const RandomForest& forest, const Input& x) {
  ClassCounts votes{};
  for (const DecisionTree& t : forest.trees) ++votes[model_index(t.predict(x))];
  return votes;
}

ModelId predict_model(const RandomForest& forest, const Input& x) {
  if (forest.constant_label) return *forest.constant_label;
  return argmax_class(vote_counts(forest, x));
}

nlohmann::json forest_to_json(const RandomForest& forest) {
  nlohmann::json trees = nlohmann::json::array();
  for (const DecisionTree& t : forest.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& n : t.nodes) {
      nodes.push_back({n.feature, n.threshold, n.left, n.right, n.counts});
    }
    trees.push_back(std::move(nodes));
  }
  return {
      {"v", metadata::kSchemaVersion},
      {"n_trees", forest.config.n_trees},
      {"max_depth", forest.config.max_depth},
      {"features_per_split", forest.config.features_per_split},
      {"seed", forest.config.seed},
      {"constant_label",
       forest.constant_label ? nlohmann::json(model_name(*forest.constant_label)) : nlohmann::json(nullptr)},
      {"trees", std::move(trees)},
  };
}

RandomForest forest_from_json(const nlohmann::json& j) {
  if (!j.contains("v")) throw Error(Errc::CorruptFile, "forest without schema version");
  if (j["v"] != metadata::kSchemaVersion) throw Error(Errc::SchemaMismatch, "forest version " + j["v"].dump());
  RandomForest f;
  try {
    f.config.n_trees = j.at("n_trees").get<std::size_t>();
    f.config.max_depth = j.at("max_depth").get<std::size_t>();
    f.config.features_per_split = j.at("features_per_split").get<std::size_t>();
    f.config.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("constant_label").is_null()) {
      f.constant_label = model_from_name(j["constant_label"].get<std::string>());
      if (!f.constant_label) throw Error(Errc::CorruptFile, "forest: unknown constant label");
    }
    for (const auto& jt : j.at("trees")) {
      DecisionTree t;
      for (const auto& jn : jt) {
        TreeNode n;
        n.feature = jn.at(0).get<int>();
        n.threshold = jn.at(1).get<double>();
        n.left = jn.at(2).get<std::int32_t>();
        n.right = jn.at(3).get<std::int32_t>();
        n.counts = jn.at(4).get<ClassCounts>();
        t.nodes.push_back(n);
      }
      f.trees.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::CorruptFile, std::string("forest: ") + e.what());
  }
  // Reject child links and feature indices that would walk out of bounds.
  for (const DecisionTree& t : f.trees) {
    const auto size = static_cast<std::int32_t>(t.nodes.size());
    if (size == 0) throw Error(Errc::CorruptFile, "forest: empty tree");
    for (std::int32_t i = 0; i < size; ++i) {
      const TreeNode& n = t.nodes[static_cast<std::size_t>(i)];
      if (n.is_leaf()) continue;
      if (n.feature >= static_cast<int>(kNumFeatures) || n.left <= i || n.right <= i || n.left >= size ||
          n.right >= size) {
        throw Error(Errc::CorruptFile, "forest: malformed node");
      }
    }
  }
  return f;
}

}  // namespace tsmeta::learners
