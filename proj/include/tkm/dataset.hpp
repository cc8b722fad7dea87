#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "tkm/errors.hpp"

namespace tkm {

/// Windowed feature rows with the grouping metadata the cross-validation
/// schemes need. Labels are strictly {-1, +1}; seizure_id 0 marks background
/// rows; overlap marks windows that share samples with a predecessor.
struct LabeledDataset {
  Eigen::MatrixXd features;  // N x D
  Eigen::VectorXi labels;
  std::vector<std::string> group_ids;
  std::vector<int> seizure_ids;
  std::vector<bool> overlap_flags;

  Eigen::Index size() const { return features.rows(); }
  Eigen::Index dims() const { return features.cols(); }

  void validate() const;
  LabeledDataset subset(std::span<const Eigen::Index> rows) const;
  void append(const LabeledDataset& other);

  /// Distinct group ids in order of first appearance.
  std::vector<std::string> distinct_groups() const;
  /// Distinct nonzero seizure ids of one group, ascending.
  std::vector<int> seizures_of_group(const std::string& group) const;
};

}  // namespace tkm
