#include "tkm/dataset.hpp"

#include <algorithm>
#include <set>

namespace tkm {

void LabeledDataset::validate() const {
  const auto n = static_cast<std::size_t>(features.rows());
  if (static_cast<std::size_t>(labels.size()) != n || group_ids.size() != n ||
      seizure_ids.size() != n || overlap_flags.size() != n)
    throw DimensionError("LabeledDataset: metadata length mismatch");
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels(i) != -1 && labels(i) != 1)
      throw DimensionError("LabeledDataset: labels must be -1 or +1");
  for (const int s : seizure_ids)
    if (s < 0) throw DimensionError("LabeledDataset: seizure ids must be >= 0");
  if (!features.allFinite())
    throw DimensionError("LabeledDataset: non-finite feature value");
}

LabeledDataset LabeledDataset::subset(std::span<const Eigen::Index> rows) const {
  LabeledDataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.labels.resize(static_cast<Eigen::Index>(rows.size()));
  out.group_ids.reserve(rows.size());
  out.seizure_ids.reserve(rows.size());
  out.overlap_flags.reserve(rows.size());
  Eigen::Index k = 0;
  for (const Eigen::Index row : rows) {
    if (row < 0 || row >= size()) throw DimensionError("LabeledDataset::subset: row out of range");
    out.features.row(k) = features.row(row);
    out.labels(k) = labels(row);
    out.group_ids.push_back(group_ids[static_cast<std::size_t>(row)]);
    out.seizure_ids.push_back(seizure_ids[static_cast<std::size_t>(row)]);
    out.overlap_flags.push_back(overlap_flags[static_cast<std::size_t>(row)]);
    ++k;
  }
  return out;
}

void LabeledDataset::append(const LabeledDataset& other) {
  if (size() == 0) {
    *this = other;
    return;
  }
  if (other.dims() != dims())
    throw DimensionError("LabeledDataset::append: feature dimension mismatch");
  const Eigen::Index n0 = size();
  features.conservativeResize(n0 + other.size(), Eigen::NoChange);
  features.bottomRows(other.size()) = other.features;
  labels.conservativeResize(n0 + other.size());
  labels.tail(other.size()) = other.labels;
  group_ids.insert(group_ids.end(), other.group_ids.begin(), other.group_ids.end());
  seizure_ids.insert(seizure_ids.end(), other.seizure_ids.begin(), other.seizure_ids.end());
  overlap_flags.insert(overlap_flags.end(), other.overlap_flags.begin(),
                       other.overlap_flags.end());
}

std::vector<std::string> LabeledDataset::distinct_groups() const {
  std::vector<std::string> out;
  for (const auto& g : group_ids)
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

std::vector<int> LabeledDataset::seizures_of_group(const std::string& group) const {
  std::set<int> ids;
  for (std::size_t i = 0; i < group_ids.size(); ++i)
    if (group_ids[i] == group && seizure_ids[i] != 0) ids.insert(seizure_ids[i]);
  return {ids.begin(), ids.end()};
}

}  // namespace tkm
