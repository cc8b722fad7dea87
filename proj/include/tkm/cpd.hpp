#pragma once

#include <Eigen/Core>
#include <vector>

#include "tkm/errors.hpp"

namespace tkm {

/// Rank-R canonical polyadic representation of a D-way tensor.
///
/// factors[d] has shape M_d x R; column r is the mode-d vector of the r-th
/// rank-one component. Factor columns carry the component scale directly; no
/// separate weight vector is maintained during computation (normalize_cpd
/// exports the canonical unit-column form with explicit weights).
///
/// Vectorization convention, fixed here and inherited by every caller:
/// column-major, first index fastest. kron(x, y) places the second argument's
/// index fastest, so vec of a D-way CPD is the chained Khatri-Rao product with
/// the last mode's factor leftmost.
struct CpdTensor {
  std::vector<Eigen::MatrixXd> factors;

  Eigen::Index order() const { return static_cast<Eigen::Index>(factors.size()); }
  Eigen::Index rank() const { return factors.empty() ? 0 : factors.front().cols(); }
  std::vector<Eigen::Index> mode_sizes() const;

  /// Throws DimensionError unless D >= 1, R >= 1, all factors share one
  /// column count and every entry is finite.
  void validate() const;
};

/// Dense tensor, flat column-major storage (first index fastest).
/// Verification-scale only; guarded by the materialization cap.
struct DenseTensor {
  std::vector<Eigen::Index> shape;
  Eigen::VectorXd values;

  double operator()(const std::vector<Eigen::Index>& index) const;
};

/// Column-wise Kronecker product of two matrices with equal column counts.
/// Column r of the result is kron(a.col(r), b.col(r)) with b's index fastest.
Eigen::MatrixXd khatri_rao(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Elementwise product; shapes must match.
Eigen::MatrixXd hadamard(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

inline constexpr Eigen::Index kDenseEntryCap = 10'000'000;

/// Materializes the CPD as a dense tensor (sum of rank-one outer products).
/// Throws SizeError when the entry count exceeds the cap.
DenseTensor cpd_to_dense(const CpdTensor& w, Eigen::Index entry_cap = kDenseEntryCap);

/// Frobenius inner product of two CPD tensors with equal mode sizes,
/// computed as the all-ones contraction of the Hadamard product of the
/// per-mode factor Gram matrices. Ranks may differ.
double cpd_inner_product(const CpdTensor& a, const CpdTensor& b);

/// Storage cost of the decomposition: R * sum_d M_d.
long long cpd_param_count(const CpdTensor& w);

struct NormalizedCpd {
  CpdTensor tensor;         // unit Euclidean norm columns
  Eigen::VectorXd weights;  // per-component scale
};

/// Canonical form: every factor column scaled to unit norm, scales collected
/// in weights. An all-zero column yields weight 0 and is replaced by e_1.
NormalizedCpd normalize_cpd(const CpdTensor& w);

}  // namespace tkm
