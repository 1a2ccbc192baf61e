#include "tsmeta/mtl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "tsmeta/error.hpp"
#include "tsmeta/metadata.hpp"
#include "tsmeta/rng.hpp"

namespace tsmeta::learners {

namespace {

using Mat = Eigen::MatrixXd;
using CMap = Eigen::Map<const Mat>;
using VMap = Eigen::Map<const Eigen::VectorXd>;

std::vector<HeadSpec> heads_for(const HyperParamSpace& space) {
  std::vector<HeadSpec> heads;
  for (const ParamDomain& d : space.domains) {
    HeadSpec h;
    h.name = d.name;
    if (const auto* c = std::get_if<Categorical>(&d.kind)) {
      h.kind = HeadKind::Categorical;
      h.labels = c->labels;
    } else if (const auto* r = std::get_if<IntegerRange>(&d.kind)) {
      h.lo = static_cast<double>(r->lo);
      h.hi = static_cast<double>(r->hi);
      h.integer = true;
    } else {
      const auto& cr = std::get<ContinuousRange>(d.kind);
      h.lo = cr.lo;
      h.hi = cr.hi;
    }
    heads.push_back(std::move(h));
  }
  return heads;
}

std::vector<LayerSpec> layout(const std::vector<HeadSpec>& heads, std::size_t head_width) {
  std::vector<LayerSpec> layers;
  std::size_t offset = 0;
  auto add = [&](std::size_t in, std::size_t out) {
    layers.push_back({in, out, offset});
    offset += in * out + out;
  };
  add(kNumFeatures, kSharedWidth1);
  add(kSharedWidth1, kSharedWidth2);
  for (const HeadSpec& h : heads) {
    add(kSharedWidth2, head_width);
    add(head_width, h.outputs());
  }
  return layers;
}

CMap weights(const std::vector<double>& p, const LayerSpec& l) {
  return CMap(p.data() + l.offset, static_cast<Eigen::Index>(l.out), static_cast<Eigen::Index>(l.in));
}
VMap bias(const std::vector<double>& p, const LayerSpec& l) {
  return VMap(p.data() + l.offset + l.weights(), static_cast<Eigen::Index>(l.out));
}

Mat affine(const std::vector<double>& p, const LayerSpec& l, const Mat& a) {
  Mat z = weights(p, l) * a;
  z.colwise() += bias(p, l);
  return z;
}

Mat relu(const Mat& z) { return z.cwiseMax(0.0); }

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

Mat to_matrix(std::span<const Input> x) {
  Mat m(static_cast<Eigen::Index>(kNumFeatures), static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      m(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(j)) = x[j][f];
    }
  }
  return m;
}

// Forward pass over a batch; the activations are kept for backprop.
struct Forward {
  Mat x, h1, h2;
  std::vector<Mat> g;  // per-head hidden
  std::vector<Mat> z;  // per-head output pre-activation
};

Forward forward(const MultiTaskNet& net, std::span<const Input> x) {
  Forward f;
  f.x = to_matrix(x);
  f.h1 = relu(affine(net.params, net.layers[0], f.x));
  f.h2 = relu(affine(net.params, net.layers[1], f.h1));
  for (std::size_t h = 0; h < net.heads.size(); ++h) {
    const std::size_t l = net.head_layer(h);
    f.g.push_back(relu(affine(net.params, net.layers[l], f.h2)));
    f.z.push_back(affine(net.params, net.layers[l + 1], f.g.back()));
  }
  return f;
}

// Loss and dLoss/dz for every head.
LossParts head_losses(const MultiTaskNet& net, const Forward& f, std::span<const Target> t, double s,
                      std::vector<Mat>* dz) {
  LossParts parts;
  const auto b = static_cast<double>(t.size());
  if (dz != nullptr) dz->clear();
  for (std::size_t h = 0; h < net.heads.size(); ++h) {
    const Mat& z = f.z[h];
    Mat d(z.rows(), z.cols());
    double sum = 0.0;
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      const double target = t[static_cast<std::size_t>(j)][h];
      if (net.heads[h].kind == HeadKind::Categorical) {
        const double zmax = z.col(j).maxCoeff();
        const Eigen::VectorXd e = (z.col(j).array() - zmax).exp();
        const double norm = e.sum();
        const auto k = static_cast<Eigen::Index>(target);
        sum += -(z(k, j) - zmax - std::log(norm));
        d.col(j) = e / norm;
        d(k, j) -= 1.0;
        d.col(j) /= b;
      } else {
        const double o = logistic(z(0, j));
        sum += (o - target) * (o - target);
        d(0, j) = 2.0 * (o - target) * o * (1.0 - o) / (b * s);
      }
    }
    if (net.heads[h].kind == HeadKind::Categorical) {
      parts.ce += sum / b;
    } else {
      parts.mse += sum / b;
    }
    if (dz != nullptr) dz->push_back(std::move(d));
  }
  parts.total = parts.ce + parts.mse / s;
  return parts;
}

void write_grad(std::vector<double>& grad, const LayerSpec& l, const Mat& dpre, const Mat& input) {
  Eigen::Map<Mat> gw(grad.data() + l.offset, static_cast<Eigen::Index>(l.out), static_cast<Eigen::Index>(l.in));
  Eigen::Map<Eigen::VectorXd> gb(grad.data() + l.offset + l.weights(), static_cast<Eigen::Index>(l.out));
  gw = dpre * input.transpose();
  gb = dpre.rowwise().sum();
}

Mat relu_mask(const Mat& grad, const Mat& act) { return (act.array() > 0.0).select(grad, 0.0); }

void check_inputs(const MultiTaskNet& net, std::span<const Input> x, std::span<const Target> t) {
  if (x.size() != t.size()) throw Error(Errc::LengthMismatch, "inputs and targets differ in length");
  if (x.empty()) throw Error(Errc::NoTrainingRows, "empty batch");
  for (const Target& tt : t) {
    if (tt.size() != net.heads.size()) throw Error(Errc::LengthMismatch, "target arity does not match heads");
  }
}

}  // namespace

std::pair<std::size_t, std::size_t> MultiTaskNet::head_param_range(std::size_t h) const noexcept {
  const LayerSpec& hidden = layers[head_layer(h)];
  const LayerSpec& out = layers[head_layer(h) + 1];
  return {hidden.offset, out.offset + out.size()};
}

MultiTaskNet init_net(const HyperParamSpace& space, std::uint64_t seed, std::size_t head_width) {
  MultiTaskNet net;
  net.model = space.model;
  net.heads = heads_for(space);
  net.layers = layout(net.heads, head_width);
  const LayerSpec& last = net.layers.back();
  net.params.assign(last.offset + last.size(), 0.0);
  KeyedRng rng(stream_key({seed, hash_string("mtl_init"), model_index(space.model)}));
  for (const LayerSpec& l : net.layers) {
    const double limit = std::sqrt(6.0 / static_cast<double>(l.in + l.out));
    for (std::size_t i = 0; i < l.weights(); ++i) net.params[l.offset + i] = (2.0 * rng.uniform() - 1.0) * limit;
  }
  return net;
}

Target encode_target(const HyperParamAssignment& a, const std::vector<HeadSpec>& heads) {
  Target t;
  t.reserve(heads.size());
  for (const HeadSpec& h : heads) {
    if (h.kind == HeadKind::Categorical) {
      const std::string& label = a.label(h.name);
      const auto it = std::find(h.labels.begin(), h.labels.end(), label);
      if (it == h.labels.end()) throw Error(Errc::InvalidParams, "unknown label '" + label + "' for " + h.name);
      t.push_back(static_cast<double>(it - h.labels.begin()));
    } else {
      const double v = a.number(h.name);
      t.push_back(h.hi > h.lo ? std::clamp((v - h.lo) / (h.hi - h.lo), 0.0, 1.0) : 0.0);
    }
  }
  return t;
}

LossParts loss(const MultiTaskNet& net, std::span<const Input> x, std::span<const Target> t, double s) {
  check_inputs(net, x, t);
  return head_losses(net, forward(net, x), t, s, nullptr);
}

LossParts loss_and_gradient(const MultiTaskNet& net, std::span<const Input> x, std::span<const Target> t, double s,
                            std::vector<double>& grad) {
  check_inputs(net, x, t);
  grad.assign(net.params.size(), 0.0);
  const Forward f = forward(net, x);
  std::vector<Mat> dz;
  const LossParts parts = head_losses(net, f, t, s, &dz);

  Mat dh2 = Mat::Zero(f.h2.rows(), f.h2.cols());
  for (std::size_t h = 0; h < net.heads.size(); ++h) {
    const LayerSpec& hidden = net.layers[net.head_layer(h)];
    const LayerSpec& out = net.layers[net.head_layer(h) + 1];
    write_grad(grad, out, dz[h], f.g[h]);
    const Mat dg = relu_mask(weights(net.params, out).transpose() * dz[h], f.g[h]);
    write_grad(grad, hidden, dg, f.h2);
    dh2 += weights(net.params, hidden).transpose() * dg;
  }
  const Mat dpre2 = relu_mask(dh2, f.h2);
  write_grad(grad, net.layers[1], dpre2, f.h1);
  const Mat dpre1 = relu_mask(weights(net.params, net.layers[1]).transpose() * dpre2, f.h1);
  write_grad(grad, net.layers[0], dpre1, f.x);
  return parts;
}

MtlTrainResult train_mtl(const HyperParamSpace& space, std::span<const Input> x, std::span<const Target> t,
                         const MtlConfig& cfg) {
  if (x.empty()) throw Error(Errc::NoTrainingRows, std::string(model_name(space.model)) + ": no training rows");
  if (!(cfg.s > 0.0)) throw Error(Errc::InvalidArgument, "loss scale s must be positive");
  MtlTrainResult result;
  result.net = init_net(space, cfg.seed, cfg.head_width);
  MultiTaskNet& net = result.net;
  if (net.heads.empty()) {
    result.loss_trace.assign(cfg.epochs, 0.0);
    return result;
  }
  result.initial_loss = loss(net, x, t, cfg.s).total;

  const std::size_t n = x.size();
  const std::size_t batch = std::max<std::size_t>(1, std::min(cfg.batch, n));
  std::vector<double> velocity(net.params.size(), 0.0), grad;
  std::vector<std::size_t> order(n);
  std::vector<Input> bx;
  std::vector<Target> bt;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    KeyedRng rng(stream_key({cfg.seed, hash_string("mtl_epoch"), model_index(space.model), epoch}));
    for (std::size_t i = n; i-- > 1;) std::swap(order[i], order[rng.below(i + 1)]);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      bx.clear();
      bt.clear();
      for (std::size_t k = start; k < end; ++k) {
        bx.push_back(x[order[k]]);
        bt.push_back(t[order[k]]);
      }
      loss_and_gradient(net, bx, bt, cfg.s, grad);
      for (std::size_t p = 0; p < net.params.size(); ++p) {
        velocity[p] = cfg.momentum * velocity[p] - cfg.lr * grad[p];
        net.params[p] += velocity[p];
      }
    }
    result.loss_trace.push_back(loss(net, x, t, cfg.s).total);
  }
  return result;
}

std::vector<std::vector<double>> head_outputs(const MultiTaskNet& net, const Input& x) {
  const Forward f = forward(net, std::span<const Input>(&x, 1));
  std::vector<std::vector<double>> out;
  for (std::size_t h = 0; h < net.heads.size(); ++h) {
    const Mat& z = f.z[h];
    std::vector<double> v(z.data(), z.data() + z.size());
    if (net.heads[h].kind == HeadKind::Numeric) v[0] = logistic(v[0]);
    out.push_back(std::move(v));
  }
  return out;
}

HyperParamAssignment decode_outputs(ModelId model, const std::vector<HeadSpec>& heads,
                                    const std::vector<std::vector<double>>& outputs) {
  HyperParamAssignment a;
  a.model = model;
  for (std::size_t h = 0; h < heads.size(); ++h) {
    const HeadSpec& spec = heads[h];
    const std::vector<double>& o = outputs.at(h);
    if (spec.kind == HeadKind::Categorical) {
      const auto best = std::max_element(o.begin(), o.end()) - o.begin();
      a.values[spec.name] = spec.labels.at(static_cast<std::size_t>(best));
    } else {
      const double u = std::isfinite(o.at(0)) ? std::clamp(o[0], 0.0, 1.0) : 0.5;
      const double v = std::clamp(spec.lo + u * (spec.hi - spec.lo), spec.lo, spec.hi);
      if (spec.integer) {
        a.values[spec.name] = static_cast<std::int64_t>(std::llround(v));
      } else {
        a.values[spec.name] = v;
      }
    }
  }
  return a;
}

HyperParamAssignment predict_hparams(const MultiTaskNet& net, const Input& x) {
  return decode_outputs(net.model, net.heads, head_outputs(net, x));
}

nlohmann::json net_to_json(const MultiTaskNet& net) {
  nlohmann::json heads = nlohmann::json::array();
  for (const HeadSpec& h : net.heads) {
    heads.push_back({{"name", h.name},
                     {"kind", h.kind == HeadKind::Categorical ? "categorical" : "numeric"},
                     {"labels", h.labels},
                     {"lo", h.lo},
                     {"hi", h.hi},
                     {"integer", h.integer}});
  }
  nlohmann::json layers = nlohmann::json::array();
  for (const LayerSpec& l : net.layers) layers.push_back({l.in, l.out});
  return {{"v", metadata::kSchemaVersion}, {"model", model_name(net.model)}, {"heads", heads},
          {"layers", layers},              {"params", net.params}};
}

MultiTaskNet net_from_json(const nlohmann::json& j) {
  if (!j.contains("v")) throw Error(Errc::CorruptFile, "network without schema version");
  if (j["v"] != metadata::kSchemaVersion) throw Error(Errc::SchemaMismatch, "network version " + j["v"].dump());
  MultiTaskNet net;
  try {
    const auto model = model_from_name(j.at("model").get<std::string>());
    if (!model) throw Error(Errc::CorruptFile, "network: unknown model");
    net.model = *model;
    for (const auto& jh : j.at("heads")) {
      HeadSpec h;
      h.name = jh.at("name").get<std::string>();
      h.kind = jh.at("kind") == "categorical" ? HeadKind::Categorical : HeadKind::Numeric;
      h.labels = jh.at("labels").get<std::vector<std::string>>();
      h.lo = jh.at("lo").get<double>();
      h.hi = jh.at("hi").get<double>();
      h.integer = jh.at("integer").get<bool>();
      net.heads.push_back(std::move(h));
    }
    std::size_t offset = 0;
    for (const auto& jl : j.at("layers")) {
      LayerSpec l{jl.at(0).get<std::size_t>(), jl.at(1).get<std::size_t>(), offset};
      offset += l.size();
      net.layers.push_back(l);
    }
    net.params = j.at("params").get<std::vector<double>>();
    if (net.layers.size() != 2 + 2 * net.heads.size() || net.params.size() != offset) {
      throw Error(Errc::CorruptFile, "network: layer layout does not match parameters");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::CorruptFile, std::string("network: ") + e.what());
  }
  return net;
}

}  // namespace tsmeta::learners
