#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsmeta/params.hpp"
#include "tsmeta/standardizer.hpp"

namespace tsmeta::learners {

using ClassCounts = std::array<std::uint32_t, kNumModels>;

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // go left when x[feature] <= threshold
  std::int32_t left = -1;
  std::int32_t right = -1;
  ClassCounts counts{};  // training histogram reaching this node

  bool is_leaf() const noexcept { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  /// Leaf reached by x.
  const TreeNode& leaf(const Input& x) const;
  /// Majority class of that leaf, ties to the smaller ModelId.
  ModelId predict(const Input& x) const;
  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct ForestConfig {
  std::size_t n_trees = 100;
  std::size_t max_depth = 12;
  std::size_t features_per_split = 7;  // ceil(sqrt(40))
  std::uint64_t seed = 0;
  friend bool operator==(const ForestConfig&, const ForestConfig&) = default;
};

struct RandomForest {
  std::vector<DecisionTree> trees;
  ForestConfig config;
  /// Set when training saw a single class; the forest then always answers it.
  std::optional<ModelId> constant_label;

  bool degenerate() const noexcept { return constant_label.has_value(); }
  friend bool operator==(const RandomForest&, const RandomForest&) = default;
};

/// Bootstrap + Gini trees. Throws Error(NoTrainingRows) on empty input and
/// Error(LengthMismatch) when x and y differ in length.
RandomForest train_forest(std::span<const Input> x, std::span<const ModelId> y, const ForestConfig& cfg);

/// One vote per tree, indexed by model_index().
ClassCounts vote_counts(const RandomForest& forest, const Input& x);
/// Majority vote; ties go to the lexicographically smaller ModelId.
ModelId predict_model(const RandomForest& forest, const Input& x);
ModelId argmax_class(const ClassCounts& counts) noexcept;

nlohmann::json forest_to_json(const RandomForest& forest);
RandomForest forest_from_json(const nlohmann::json& j);

}  // namespace tsmeta::learners
