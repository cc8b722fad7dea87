#include "tkm/feature_map.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tkm {

namespace {

void check_dim(Eigen::Index dim, const FeatureMapConfig& cfg) {
  if (dim < 0 || dim >= cfg.dims())
    throw DimensionError("feature map: dimension index " + std::to_string(dim) +
                         " out of range");
}

void check_in_box(double x, double half_width, Eigen::Index dim) {
  if (!(x >= -half_width && x <= half_width))
    throw DomainError("feature map: coordinate " + std::to_string(x) +
                      " outside [-U, U] for dimension " + std::to_string(dim));
}

}  // namespace

FeatureMapConfig FeatureMapConfig::uniform(Eigen::Index dims, Eigen::Index basis_count,
                                           double half_width, double lengthscale) {
  FeatureMapConfig cfg;
  cfg.basis_counts.assign(static_cast<std::size_t>(dims), basis_count);
  cfg.half_widths = Eigen::VectorXd::Constant(dims, half_width);
  cfg.lengthscale = lengthscale;
  cfg.validate();
  return cfg;
}

void FeatureMapConfig::validate() const {
  if (basis_counts.empty())
    throw DimensionError("FeatureMapConfig: at least one dimension required");
  if (static_cast<Eigen::Index>(basis_counts.size()) != half_widths.size())
    throw DimensionError("FeatureMapConfig: basis_counts/half_widths length mismatch");
  for (const auto m : basis_counts)
    if (m < 1) throw DimensionError("FeatureMapConfig: basis counts must be >= 1");
  if (!(half_widths.minCoeff() > 0.0))
    throw DomainError("FeatureMapConfig: half widths must be positive");
  if (!(lengthscale > 0.0))
    throw DomainError("FeatureMapConfig: lengthscale must be positive");
}

double rbf_spectral_density(double omega, double lengthscale) {
  if (!(lengthscale > 0.0))
    throw DomainError("rbf_spectral_density: lengthscale must be positive");
  return lengthscale * std::sqrt(2.0 * std::numbers::pi) *
         std::exp(-0.5 * lengthscale * lengthscale * omega * omega);
}

Eigen::VectorXd local_feature_map(double x, Eigen::Index dim, const FeatureMapConfig& cfg) {
  cfg.validate();
  check_dim(dim, cfg);
  const double u = cfg.half_widths(dim);
  check_in_box(x, u, dim);
  const Eigen::Index m = cfg.basis_counts[static_cast<std::size_t>(dim)];
  const double inv_sqrt_u = 1.0 / std::sqrt(u);
  Eigen::VectorXd phi(m);
  for (Eigen::Index i = 1; i <= m; ++i) {
    const double omega = std::numbers::pi * static_cast<double>(i) / (2.0 * u);
    phi(i - 1) = inv_sqrt_u * std::sqrt(rbf_spectral_density(omega, cfg.lengthscale)) *
                 std::sin(omega * (x + u));
  }
  return phi;
}

std::vector<Eigen::VectorXd> feature_tensor(const Eigen::VectorXd& x,
                                            const FeatureMapConfig& cfg) {
  cfg.validate();
  if (x.size() != cfg.dims())
    throw DimensionError("feature_tensor: point dimension mismatch");
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(cfg.dims()));
  for (Eigen::Index d = 0; d < cfg.dims(); ++d)
    out.push_back(local_feature_map(x(d), d, cfg));
  return out;
}

double approx_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                     const FeatureMapConfig& cfg) {
  const auto phi_x = feature_tensor(x, cfg);
  const auto phi_y = feature_tensor(y, cfg);
  double value = 1.0;
  for (std::size_t d = 0; d < phi_x.size(); ++d) value *= phi_x[d].dot(phi_y[d]);
  return value;
}

double exact_rbf_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        double lengthscale) {
  if (!(lengthscale > 0.0))
    throw DomainError("exact_rbf_kernel: lengthscale must be positive");
  if (x.size() != y.size())
    throw DimensionError("exact_rbf_kernel: point dimension mismatch");
  return std::exp(-(x - y).squaredNorm() / (2.0 * lengthscale * lengthscale));
}

Eigen::MatrixXd feature_matrix(const Eigen::VectorXd& values, Eigen::Index dim,
                               const FeatureMapConfig& cfg) {
  cfg.validate();
  check_dim(dim, cfg);
  const double u = cfg.half_widths(dim);
  const Eigen::Index m = cfg.basis_counts[static_cast<std::size_t>(dim)];
  const double inv_sqrt_u = 1.0 / std::sqrt(u);
  Eigen::MatrixXd phi(values.size(), m);
  for (Eigen::Index n = 0; n < values.size(); ++n) check_in_box(values(n), u, dim);
  for (Eigen::Index i = 1; i <= m; ++i) {
    const double omega = std::numbers::pi * static_cast<double>(i) / (2.0 * u);
    const double weight = inv_sqrt_u * std::sqrt(rbf_spectral_density(omega, cfg.lengthscale));
    phi.col(i - 1) = (weight * ((values.array() + u) * omega).sin()).matrix();
  }
  return phi;
}

}  // namespace tkm
