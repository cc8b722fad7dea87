#include "tkm/dual_krr.hpp"

#include <Eigen/Cholesky>
#include <string>

namespace tkm {

double kernel_value(const KernelSpec& kernel, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y) {
  if (kernel.kind == KernelKind::Approximate) return approx_kernel(x, y, kernel.map);
  return exact_rbf_kernel(x, y, kernel.map.lengthscale);
}

Eigen::MatrixXd gram_matrix(const KernelSpec& kernel, const Eigen::MatrixXd& a,
                            const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols()) throw DimensionError("gram_matrix: dimension mismatch");
  if (kernel.kind == KernelKind::Approximate) {
    // Hadamard product of per-dimension feature Grams; same value as the
    // pairwise product of feature dots, at O(N^2 M) per dimension.
    if (a.cols() != kernel.map.dims())
      throw DimensionError("gram_matrix: dimension does not match the map");
    Eigen::MatrixXd k = Eigen::MatrixXd::Ones(a.rows(), b.rows());
    for (Eigen::Index d = 0; d < kernel.map.dims(); ++d) {
      const Eigen::MatrixXd fa = feature_matrix(a.col(d), d, kernel.map);
      const Eigen::MatrixXd fb = feature_matrix(b.col(d), d, kernel.map);
      k = k.cwiseProduct(fa * fb.transpose());
    }
    return k;
  }
  const double inv = 1.0 / (2.0 * kernel.map.lengthscale * kernel.map.lengthscale);
  Eigen::MatrixXd k(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.rows(); ++j)
      k(i, j) = std::exp(-(a.row(i) - b.row(j)).squaredNorm() * inv);
  return k;
}

DualKrrModel dual_fit(const KernelSpec& kernel, const Eigen::MatrixXd& scaled_inputs,
                      const Eigen::VectorXd& targets, double ridge) {
  if (scaled_inputs.rows() != targets.size())
    throw DimensionError("dual_fit: row count does not match target count");
  if (scaled_inputs.rows() < 1) throw DimensionError("dual_fit: empty training set");
  if (scaled_inputs.rows() > kDualMaxRows)
    throw SizeError("dual_fit: training set exceeds " + std::to_string(kDualMaxRows) + " rows");
  if (!(ridge >= 0.0)) throw DomainError("dual_fit: ridge must be >= 0");
  if (kernel.kind == KernelKind::Approximate && scaled_inputs.cols() != kernel.map.dims())
    throw DimensionError("dual_fit: feature dimension does not match the map");

  DualKrrModel model;
  model.kernel = kernel;
  model.train_inputs = scaled_inputs;
  model.ridge = ridge;
  Eigen::MatrixXd k = gram_matrix(kernel, scaled_inputs, scaled_inputs);
  k.diagonal().array() += ridge;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(k);
  if (ldlt.info() != Eigen::Success)
    throw DomainError("dual_fit: kernel system factorization failed");
  model.alpha = ldlt.solve(targets);
  return model;
}

Eigen::VectorXd dual_predict(const DualKrrModel& model, const Eigen::MatrixXd& scaled_inputs) {
  if (scaled_inputs.cols() != model.train_inputs.cols())
    throw DimensionError("dual_predict: dimension mismatch");
  return gram_matrix(model.kernel, scaled_inputs, model.train_inputs) * model.alpha;
}

long dual_param_count(const DualKrrModel& model) {
  return static_cast<long>(model.train_inputs.rows()) *
             static_cast<long>(model.train_inputs.cols()) +
         static_cast<long>(model.alpha.size());
}

}  // namespace tkm
