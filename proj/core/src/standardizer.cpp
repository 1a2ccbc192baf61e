#include "tsmeta/standardizer.hpp"

#include <cmath>

#include "tsmeta/error.hpp"
#include "tsmeta/metadata.hpp"

namespace tsmeta::learners {

Standardizer::Standardizer() { scale_.fill(1.0); }

Standardizer Standardizer::fit(std::span<const FeatureVector> train) {
  if (train.size() < 2) {
    throw Error(Errc::TooFewRecords, "standardizer needs at least 2 records, got " + std::to_string(train.size()));
  }
  Standardizer st;
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const FeatureVector& fv : train) {
      if (!fv.defined[f]) continue;
      sum += fv.values[f];
      ++n;
    }
    if (n == 0) continue;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const FeatureVector& fv : train) {
      if (fv.defined[f]) ss += (fv.values[f] - mean) * (fv.values[f] - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(n));
    st.mean_[f] = mean;
    st.scale_[f] = sd > 0.0 && std::isfinite(sd) ? sd : 1.0;
  }
  return st;
}

Input Standardizer::apply(const FeatureVector& fv) const noexcept {
  Input z{};
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    z[f] = fv.defined[f] ? (fv.values[f] - mean_[f]) / scale_[f] : 0.0;
  }
  return z;
}

FeatureVector Standardizer::inverse(const Input& z, const std::array<bool, kNumFeatures>& defined) const noexcept {
  FeatureVector fv;
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    if (defined[f]) {
      fv.values[f] = z[f] * scale_[f] + mean_[f];
      fv.defined[f] = true;
    }
  }
  return fv;
}

nlohmann::json Standardizer::to_json() const {
  return {{"v", metadata::kSchemaVersion}, {"mean", mean_}, {"scale", scale_}};
}

Standardizer Standardizer::from_json(const nlohmann::json& j) {
  if (!j.contains("v")) throw Error(Errc::CorruptFile, "standardizer without schema version");
  if (j["v"] != metadata::kSchemaVersion) throw Error(Errc::SchemaMismatch, "standardizer version " + j["v"].dump());
  Standardizer st;
  try {
    st.mean_ = j.at("mean").get<std::array<double, kNumFeatures>>();
    st.scale_ = j.at("scale").get<std::array<double, kNumFeatures>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::CorruptFile, std::string("standardizer: ") + e.what());
  }
  return st;
}

}  // namespace tsmeta::learners
