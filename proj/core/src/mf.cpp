#include "tsmeta/mf.hpp"

#include <algorithm>

#include <Eigen/Dense>

#include "tsmeta/error.hpp"
#include "tsmeta/metadata.hpp"

namespace tsmeta::learners {

MFModel mf_fit(const std::vector<std::vector<std::optional<double>>>& a, const std::vector<std::vector<double>>& u,
               double lambda) {
  if (a.size() != u.size()) throw Error(Errc::LengthMismatch, "error matrix and feature matrix row counts differ");
  if (a.empty()) throw Error(Errc::NoTrainingRows, "matrix factorization needs at least one row");
  if (!(lambda >= 0.0)) throw Error(Errc::InvalidArgument, "ridge penalty must be non-negative");
  const std::size_t k = a.front().size();
  const std::size_t d = u.front().size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != k || u[i].size() != d) throw Error(Errc::LengthMismatch, "ragged matrix row");
  }
  const auto di = static_cast<Eigen::Index>(d);
  MFModel mf;
  mf.lambda = lambda;
  for (std::size_t col = 0; col < k; ++col) {
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(di, di);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(di);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i][col]) continue;
      const Eigen::Map<const Eigen::VectorXd> ui(u[i].data(), di);
      gram.selfadjointView<Eigen::Lower>().rankUpdate(ui);
      rhs += *a[i][col] * ui;
    }
    gram = gram.selfadjointView<Eigen::Lower>();
    gram.diagonal().array() += lambda;
    Eigen::VectorXd v;
    if (lambda > 0.0) {
      v = gram.llt().solve(rhs);
    } else {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gram);
      qr.setThreshold(1e-12);
      if (qr.rank() < di) {
        throw Error(Errc::SingularSystem, "model column " + std::to_string(col) + ": rank " +
                                              std::to_string(qr.rank()) + " < " + std::to_string(d));
      }
      v = qr.solve(rhs);
    }
    mf.V.emplace_back(v.data(), v.data() + v.size());
  }
  return mf;
}

std::vector<RankedColumn> mf_rank(const MFModel& mf, const std::vector<double>& u_star) {
  std::vector<RankedColumn> out;
  for (std::size_t k = 0; k < mf.V.size(); ++k) {
    if (mf.V[k].size() != u_star.size()) throw Error(Errc::LengthMismatch, "feature vector dimension mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < u_star.size(); ++j) s += u_star[j] * mf.V[k][j];
    out.push_back({k, s});
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedColumn& x, const RankedColumn& y) { return x.score < y.score; });
  return out;
}

nlohmann::json mf_to_json(const MFModel& mf) {
  return {{"v", metadata::kSchemaVersion}, {"lambda", mf.lambda}, {"V", mf.V}};
}

MFModel mf_from_json(const nlohmann::json& j) {
  if (!j.contains("v")) throw Error(Errc::CorruptFile, "mf model without schema version");
  if (j["v"] != metadata::kSchemaVersion) throw Error(Errc::SchemaMismatch, "mf model version " + j["v"].dump());
  MFModel mf;
  try {
    mf.lambda = j.at("lambda").get<double>();
    mf.V = j.at("V").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::CorruptFile, std::string("mf model: ") + e.what());
  }
  return mf;
}

}  // namespace tsmeta::learners
