#pragma once

// Private least-squares helpers shared by the feature and model code.

#include <Eigen/Dense>
#include <algorithm>
#include <optional>

namespace tsmeta::detail {

struct OlsFit {
  Eigen::VectorXd coef;
  Eigen::VectorXd residuals;
  double r_squared = 0.0;  // centred; 0 when the response has no variance
};

/// Least squares via column-pivoted QR. Returns nullopt when the design is
/// rank deficient or has no more rows than columns.
inline std::optional<OlsFit> ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() <= x.cols()) return std::nullopt;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < x.cols()) return std::nullopt;
  OlsFit fit;
  fit.coef = qr.solve(y);
  if (!fit.coef.allFinite()) return std::nullopt;
  fit.residuals = y - x * fit.coef;
  const double centred = (y.array() - y.mean()).square().sum();
  if (centred > 0.0) {
    fit.r_squared = std::clamp(1.0 - fit.residuals.squaredNorm() / centred, 0.0, 1.0);
  }
  return fit;
}

}  // namespace tsmeta::detail
