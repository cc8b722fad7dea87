#pragma once

#include <Eigen/Core>
#include <vector>

#include "tkm/errors.hpp"

namespace tkm {

/// Per-dimension sinusoidal basis on the hyperbox x_d in [-U_d, U_d],
/// weighted so that the inner product of two feature vectors approximates
/// the unit-variance RBF kernel with the shared lengthscale.
struct FeatureMapConfig {
  std::vector<Eigen::Index> basis_counts;  // M_d per dimension
  Eigen::VectorXd half_widths;             // U_d per dimension
  double lengthscale = 0.6;

  Eigen::Index dims() const { return static_cast<Eigen::Index>(basis_counts.size()); }

  static FeatureMapConfig uniform(Eigen::Index dims, Eigen::Index basis_count,
                                  double half_width, double lengthscale);

  /// Throws DimensionError unless all M_d >= 1, all U_d > 0, lengthscale > 0
  /// and the per-dimension vectors agree in length.
  void validate() const;
};

/// Spectral density of the unit-variance 1-D RBF kernel:
/// S(omega) = l * sqrt(2*pi) * exp(-l^2 * omega^2 / 2).
double rbf_spectral_density(double omega, double lengthscale);

/// Basis expansion of a single coordinate, entry i (1-based):
///   (1/sqrt(U)) * sqrt(S(pi*i/(2U))) * sin(pi*i*(x+U)/(2U)).
/// The square root of the spectral density makes phi(x).phi(x') approximate
/// the kernel. Throws DomainError when x lies outside [-U_d, U_d].
Eigen::VectorXd local_feature_map(double x, Eigen::Index dim, const FeatureMapConfig& cfg);

/// The D local feature vectors of a point; their outer product is the
/// rank-one feature tensor, which is never materialized.
std::vector<Eigen::VectorXd> feature_tensor(const Eigen::VectorXd& x,
                                            const FeatureMapConfig& cfg);

/// Product over dimensions of the local feature inner products;
/// approximates exp(-||x - y||^2 / (2 l^2)).
double approx_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                     const FeatureMapConfig& cfg);

/// Exact RBF kernel, the verification oracle for the approximation.
double exact_rbf_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        double lengthscale);

/// Rows are local_feature_map values for one dimension over a batch of
/// coordinates: result(n, i) = phi_i(values(n)). N x M_d.
Eigen::MatrixXd feature_matrix(const Eigen::VectorXd& values, Eigen::Index dim,
                               const FeatureMapConfig& cfg);

}  // namespace tkm
