#include "tkm/scaler.hpp"

#include <algorithm>
#include <string>

namespace tkm {

ScalerParams ScalerParams::identity(Eigen::Index dims) {
  ScalerParams p;
  p.min = Eigen::VectorXd::Constant(dims, -1.0);
  p.max = Eigen::VectorXd::Constant(dims, 1.0);
  return p;
}

void ScalerParams::validate() const {
  if (min.size() != max.size() || min.size() == 0)
    throw DimensionError("ScalerParams: min/max length mismatch");
  for (Eigen::Index j = 0; j < min.size(); ++j)
    if (!(max(j) >= min(j)))
      throw DimensionError("ScalerParams: max < min for feature " + std::to_string(j));
}

ScalerParams fit_scaler(const Eigen::MatrixXd& train_features) {
  if (train_features.rows() == 0 || train_features.cols() == 0)
    throw DimensionError("fit_scaler: empty training set");
  ScalerParams p;
  p.min = train_features.colwise().minCoeff();
  p.max = train_features.colwise().maxCoeff();
  return p;
}

namespace {

double scale_entry(const ScalerParams& p, Eigen::Index j, double x, long& clamped) {
  if (p.degenerate(j)) return 0.0;
  const double y = 2.0 * (x - p.min(j)) / (p.max(j) - p.min(j)) - 1.0;
  if (y < -1.0 || y > 1.0) {
    ++clamped;
    return std::clamp(y, -1.0, 1.0);
  }
  return y;
}

}  // namespace

ScaledFeatures apply_scaler(const ScalerParams& params, const Eigen::MatrixXd& features) {
  params.validate();
  if (features.cols() != params.dims())
    throw DimensionError("apply_scaler: feature dimension mismatch");
  ScaledFeatures out;
  out.values.resize(features.rows(), features.cols());
  for (Eigen::Index j = 0; j < features.cols(); ++j)
    for (Eigen::Index n = 0; n < features.rows(); ++n)
      out.values(n, j) = scale_entry(params, j, features(n, j), out.clamped);
  return out;
}

Eigen::VectorXd apply_scaler_row(const ScalerParams& params, const Eigen::VectorXd& features,
                                 long* clamped) {
  params.validate();
  if (features.size() != params.dims())
    throw DimensionError("apply_scaler_row: feature dimension mismatch");
  long count = 0;
  Eigen::VectorXd out(features.size());
  for (Eigen::Index j = 0; j < features.size(); ++j)
    out(j) = scale_entry(params, j, features(j), count);
  if (clamped != nullptr) *clamped += count;
  return out;
}

}  // namespace tkm
