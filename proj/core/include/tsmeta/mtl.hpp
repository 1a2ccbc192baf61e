#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsmeta/params.hpp"
#include "tsmeta/standardizer.hpp"

namespace tsmeta::learners {

inline constexpr std::size_t kSharedWidth1 = 64;
inline constexpr std::size_t kSharedWidth2 = 32;
inline constexpr std::size_t kDefaultHeadWidth = 16;

enum class HeadKind { Categorical, Numeric };

/// One task of the network, derived from one domain of the model's space.
struct HeadSpec {
  std::string name;
  HeadKind kind = HeadKind::Numeric;
  std::vector<std::string> labels;  // categorical only
  double lo = 0.0, hi = 1.0;        // numeric only
  bool integer = false;             // numeric output rounded on decode

  std::size_t outputs() const noexcept { return kind == HeadKind::Categorical ? labels.size() : 1; }
  friend bool operator==(const HeadSpec&, const HeadSpec&) = default;
};

/// Dense layer stored column-major (out x in) in the flat parameter vector,
/// followed by its bias.
struct LayerSpec {
  std::size_t in = 0, out = 0, offset = 0;

  std::size_t weights() const noexcept { return in * out; }
  std::size_t size() const noexcept { return in * out + out; }
  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Hard parameter sharing: 40 -> 64 -> 32 shared ReLU layers, then per head a
/// ReLU hidden layer and a linear output (logits, or one value squashed by a
/// logistic onto [0, 1]).
struct MultiTaskNet {
  ModelId model = ModelId::Arima;
  std::vector<HeadSpec> heads;
  std::vector<LayerSpec> layers;  // shared1, shared2, then (hidden, out) per head
  std::vector<double> params;

  std::size_t head_layer(std::size_t h) const noexcept { return 2 + 2 * h; }
  /// [begin, end) of head h's parameters in `params`.
  std::pair<std::size_t, std::size_t> head_param_range(std::size_t h) const noexcept;
  friend bool operator==(const MultiTaskNet&, const MultiTaskNet&) = default;
};

/// Glorot-uniform weights, zero biases.
MultiTaskNet init_net(const HyperParamSpace& space, std::uint64_t seed, std::size_t head_width = kDefaultHeadWidth);

/// Per head: the class index (categorical) or (v - lo) / (hi - lo) (numeric).
using Target = std::vector<double>;
Target encode_target(const HyperParamAssignment& a, const std::vector<HeadSpec>& heads);

struct LossParts {
  double ce = 0.0;   // sum over categorical heads of the batch-mean cross-entropy
  double mse = 0.0;  // sum over numeric heads of the batch-mean squared error
  double total = 0.0;  // ce + mse / s
};

LossParts loss(const MultiTaskNet& net, std::span<const Input> x, std::span<const Target> t, double s);
/// Same loss; `grad` is resized to params.size() and overwritten.
LossParts loss_and_gradient(const MultiTaskNet& net, std::span<const Input> x, std::span<const Target> t, double s,
                            std::vector<double>& grad);

struct MtlConfig {
  double s = 1.0;
  std::size_t epochs = 200;
  double lr = 0.01;
  std::size_t batch = 32;
  double momentum = 0.9;
  std::size_t head_width = kDefaultHeadWidth;
  std::uint64_t seed = 0;
  friend bool operator==(const MtlConfig&, const MtlConfig&) = default;
};

struct MtlTrainResult {
  MultiTaskNet net;
  double initial_loss = 0.0;
  std::vector<double> loss_trace;  // full-data total loss after each epoch
};

/// Mini-batch SGD with momentum over a seeded per-epoch shuffle. Throws
/// Error(NoTrainingRows) on empty input.
MtlTrainResult train_mtl(const HyperParamSpace& space, std::span<const Input> x, std::span<const Target> t,
                         const MtlConfig& cfg);

/// Raw head outputs: logits for categorical heads, the squashed [0, 1] value
/// for numeric heads.
std::vector<std::vector<double>> head_outputs(const MultiTaskNet& net, const Input& x);
/// argmax label (first on ties); lo + o * (hi - lo), clamped, rounded for
/// integer domains.
HyperParamAssignment decode_outputs(ModelId model, const std::vector<HeadSpec>& heads,
                                    const std::vector<std::vector<double>>& outputs);
HyperParamAssignment predict_hparams(const MultiTaskNet& net, const Input& x);

nlohmann::json net_to_json(const MultiTaskNet& net);
MultiTaskNet net_from_json(const nlohmann::json& j);

}  // namespace tsmeta::learners
