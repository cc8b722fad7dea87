#include "tkm/cpd.hpp"

#include <cmath>
#include <string>

namespace tkm {

std::vector<Eigen::Index> CpdTensor::mode_sizes() const {
  std::vector<Eigen::Index> sizes;
  sizes.reserve(factors.size());
  for (const auto& f : factors) sizes.push_back(f.rows());
  return sizes;
}

void CpdTensor::validate() const {
  if (factors.empty()) throw DimensionError("CpdTensor: at least one factor required");
  const Eigen::Index r = factors.front().cols();
  if (r < 1) throw DimensionError("CpdTensor: rank must be >= 1");
  for (std::size_t d = 0; d < factors.size(); ++d) {
    if (factors[d].cols() != r)
      throw DimensionError("CpdTensor: factor " + std::to_string(d) +
                           " has mismatched column count");
    if (factors[d].rows() < 1)
      throw DimensionError("CpdTensor: factor " + std::to_string(d) + " is empty");
    if (!factors[d].allFinite())
      throw DimensionError("CpdTensor: factor " + std::to_string(d) +
                           " contains non-finite entries");
  }
}

double DenseTensor::operator()(const std::vector<Eigen::Index>& index) const {
  if (index.size() != shape.size())
    throw DimensionError("DenseTensor: index arity mismatch");
  Eigen::Index flat = 0;
  for (std::size_t d = shape.size(); d-- > 0;) {
    if (index[d] < 0 || index[d] >= shape[d])
      throw DimensionError("DenseTensor: index out of range");
    flat = flat * shape[d] + index[d];
  }
  return values(flat);
}

Eigen::MatrixXd khatri_rao(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols())
    throw DimensionError("khatri_rao: column counts differ");
  const Eigen::Index rows_a = a.rows(), rows_b = b.rows(), r = a.cols();
  Eigen::MatrixXd out(rows_a * rows_b, r);
  for (Eigen::Index c = 0; c < r; ++c)
    for (Eigen::Index i = 0; i < rows_a; ++i)
      out.col(c).segment(i * rows_b, rows_b) = a(i, c) * b.col(c);
  return out;
}

Eigen::MatrixXd hadamard(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("hadamard: shape mismatch");
  return a.cwiseProduct(b);
}

DenseTensor cpd_to_dense(const CpdTensor& w, Eigen::Index entry_cap) {
  w.validate();
  Eigen::Index entries = 1;
  for (const auto& f : w.factors) {
    if (entries > entry_cap / f.rows())
      throw SizeError("cpd_to_dense: entry count exceeds cap");
    entries *= f.rows();
  }
  // vec(W) = (W^(D) kr ... kr W^(1)) * 1, first index fastest.
  Eigen::MatrixXd chain = w.factors.back();
  for (std::size_t d = w.factors.size() - 1; d-- > 0;)
    chain = khatri_rao(chain, w.factors[d]);
  DenseTensor out;
  out.shape = w.mode_sizes();
  out.values = chain.rowwise().sum();
  return out;
}

double cpd_inner_product(const CpdTensor& a, const CpdTensor& b) {
  a.validate();
  b.validate();
  if (a.mode_sizes() != b.mode_sizes())
    throw DimensionError("cpd_inner_product: mode sizes differ");
  Eigen::MatrixXd gram = Eigen::MatrixXd::Ones(a.rank(), b.rank());
  for (Eigen::Index d = 0; d < a.order(); ++d)
    gram = gram.cwiseProduct(a.factors[d].transpose() * b.factors[d]);
  return gram.sum();
}

long long cpd_param_count(const CpdTensor& w) {
  long long modes = 0;
  for (const auto& f : w.factors) modes += f.rows();
  return static_cast<long long>(w.rank()) * modes;
}

NormalizedCpd normalize_cpd(const CpdTensor& w) {
  w.validate();
  NormalizedCpd out;
  out.tensor = w;
  out.weights = Eigen::VectorXd::Ones(w.rank());
  for (auto& factor : out.tensor.factors) {
    for (Eigen::Index r = 0; r < factor.cols(); ++r) {
      const double norm = factor.col(r).norm();
      if (norm == 0.0) {
        out.weights(r) = 0.0;
        factor.col(r).setZero();
        factor(0, r) = 1.0;
      } else {
        out.weights(r) *= norm;
        factor.col(r) /= norm;
      }
    }
  }
  return out;
}

}  // namespace tkm
