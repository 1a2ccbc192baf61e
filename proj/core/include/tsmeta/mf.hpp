#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsmeta/params.hpp"

namespace tsmeta::learners {

/// Item embeddings for the error-matrix recommender: row k of V scores
/// model column k as u . V_k.
struct MFModel {
  std::vector<std::vector<double>> V;  // n_models x d
  double lambda = 0.0;

  friend bool operator==(const MFModel&, const MFModel&) = default;
};

/// a[i][k] is the error of model column k on series i (empty = missing);
/// u[i] is the feature row of series i. Each column is an independent ridge
/// regression on its observed rows. Throws Error(SingularSystem) when
/// lambda == 0 and a column's design is rank deficient, Error(LengthMismatch)
/// on ragged input.
MFModel mf_fit(const std::vector<std::vector<std::optional<double>>>& a, const std::vector<std::vector<double>>& u,
               double lambda);

struct RankedColumn {
  std::size_t column = 0;
  double score = 0.0;
};

/// Scores u_star . V_k sorted ascending; ties keep column order.
std::vector<RankedColumn> mf_rank(const MFModel& mf, const std::vector<double>& u_star);

nlohmann::json mf_to_json(const MFModel& mf);
MFModel mf_from_json(const nlohmann::json& j);

}  // namespace tsmeta::learners
