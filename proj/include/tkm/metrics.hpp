#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tkm/errors.hpp"

namespace tkm {

struct Confusion {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;
  long total() const { return tp + fp + tn + fn; }
};

/// Thresholded metrics; every 0/0 ratio is defined as 0.
struct ThresholdMetrics {
  double f1 = 0.0;
  double sensitivity = 0.0;
  double precision = 0.0;
  Confusion confusion;
};

struct FoldReport {
  std::string fold_id;
  std::optional<double> auroc;  // absent when the test fold is single-class
  std::optional<double> auprc;
  double f1 = 0.0;
  double sensitivity = 0.0;
  double precision = 0.0;
  double threshold = 0.0;
  Confusion confusion;
  long train_size = 0;
  long test_size = 0;
  bool single_class = false;
};

struct EvaluationReport {
  std::optional<double> auroc;
  std::optional<double> auprc;
  double f1 = 0.0;
  double sensitivity = 0.0;
  double precision = 0.0;
  double threshold = 0.0;
  Confusion confusion;
  std::vector<FoldReport> per_fold;
};

/// Area under the ROC curve by the trapezoidal rule; score ties are handled
/// with midranks, so the result equals the normalized Mann-Whitney U
/// statistic. Labels are +1 / -1. Throws DomainError on single-class input.
double roc_auc(const Eigen::VectorXd& scores, const Eigen::VectorXi& labels);

/// Area under the precision-recall curve in average-precision form: a
/// step-wise sum over descending distinct score thresholds. Throws
/// DomainError when no positives are present.
double pr_auc(const Eigen::VectorXd& scores, const Eigen::VectorXi& labels);

/// Scans the midpoints between consecutive distinct sorted scores plus
/// below-min / above-max sentinels and returns (threshold, f1) maximizing F1.
/// Ties are broken toward the higher threshold (fewer positive predictions).
/// A prediction is positive when score > threshold. Throws DomainError on
/// single-class input.
std::pair<double, double> best_f1_threshold(const Eigen::VectorXd& scores,
                                            const Eigen::VectorXi& labels);

/// Confusion counts and derived metrics at a fixed threshold
/// (positive iff score > threshold).
ThresholdMetrics confusion_metrics(const Eigen::VectorXd& scores, const Eigen::VectorXi& labels,
                                   double threshold);

}  // namespace tkm
