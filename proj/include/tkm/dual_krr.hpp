#pragma once

#include <Eigen/Dense>

#include "tkm/errors.hpp"
#include "tkm/feature_map.hpp"

namespace tkm {

/// Kernel used by the dual solver: either the finite-basis approximation
/// induced by a feature map, or the exact product RBF kernel.
enum class KernelKind { Approximate, ExactRbf };

struct KernelSpec {
  KernelKind kind = KernelKind::Approximate;
  FeatureMapConfig map;
};

/// Dual-form kernel ridge regression model: alpha = (K + lambda I)^{-1} y
/// over the stored training inputs. Used as a small-scale reference; the
/// training set is capped at kDualMaxRows rows.
struct DualKrrModel {
  KernelSpec kernel;
  Eigen::MatrixXd train_inputs;  // N x D, already scaled to the box
  Eigen::VectorXd alpha;         // N
  double ridge = 1e-4;
};

inline constexpr Eigen::Index kDualMaxRows = 2000;

/// Kernel value k(x, y) for one pair of scaled points.
double kernel_value(const KernelSpec& kernel, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y);

/// Gram matrix K with K(i, j) = k(a_i, b_j) for scaled row sets a and b.
Eigen::MatrixXd gram_matrix(const KernelSpec& kernel, const Eigen::MatrixXd& a,
                            const Eigen::MatrixXd& b);

/// Solves (K + lambda I) alpha = y on the given scaled inputs.
/// Throws SizeError when the training set exceeds kDualMaxRows rows.
DualKrrModel dual_fit(const KernelSpec& kernel, const Eigen::MatrixXd& scaled_inputs,
                      const Eigen::VectorXd& targets, double ridge);

/// Predicted scores K(test, train) * alpha for scaled test rows.
Eigen::VectorXd dual_predict(const DualKrrModel& model, const Eigen::MatrixXd& scaled_inputs);

/// Parameter count of the dual model: one coefficient per training row plus
/// the stored training inputs.
long dual_param_count(const DualKrrModel& model);

}  // namespace tkm
