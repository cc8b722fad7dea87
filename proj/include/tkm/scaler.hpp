#pragma once

#include <Eigen/Core>

#include "tkm/errors.hpp"

namespace tkm {

/// Per-feature min-max parameters mapping training data into [-1, 1].
/// Degenerate features (max == min) map to 0.
struct ScalerParams {
  Eigen::VectorXd min;
  Eigen::VectorXd max;

  Eigen::Index dims() const { return min.size(); }
  bool degenerate(Eigen::Index feature) const { return max(feature) == min(feature); }

  /// Scaler whose affine map is the identity on [-1, 1].
  static ScalerParams identity(Eigen::Index dims);

  void validate() const;
};

struct ScaledFeatures {
  Eigen::MatrixXd values;  // every entry in [-1, 1]
  long clamped = 0;        // entries that fell outside the training range
};

/// Column-wise min/max over the training rows. Throws on an empty set.
ScalerParams fit_scaler(const Eigen::MatrixXd& train_features);

/// Affine map into [-1, 1] followed by clamping; out-of-range entries are
/// clamped and counted rather than passed through, so a feature map behind
/// the scaler never sees out-of-box values.
ScaledFeatures apply_scaler(const ScalerParams& params, const Eigen::MatrixXd& features);

/// Single-sample variant of apply_scaler.
Eigen::VectorXd apply_scaler_row(const ScalerParams& params, const Eigen::VectorXd& features,
                                 long* clamped = nullptr);

}  // namespace tkm
