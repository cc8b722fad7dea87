#include "tkm/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace tkm {

namespace {

void check_inputs(const Eigen::VectorXd& scores, const Eigen::VectorXi& labels) {
  if (scores.size() != labels.size())
    throw DimensionError("metrics: score and label counts differ");
  if (scores.size() == 0) throw DimensionError("metrics: empty input");
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels(i) != 1 && labels(i) != -1)
      throw DimensionError("metrics: labels must be +1 or -1");
  if (!scores.allFinite()) throw DomainError("metrics: scores must be finite");
}

std::vector<Eigen::Index> order_by_score(const Eigen::VectorXd& scores, bool descending) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(scores.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return descending ? scores(a) > scores(b) : scores(a) < scores(b);
  });
  return idx;
}

}  // namespace

double roc_auc(const Eigen::VectorXd& scores, const Eigen::VectorXi& labels) {
  check_inputs(scores, labels);
  const long positives = (labels.array() == 1).count();
  const long negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0)
    throw DomainError("roc_auc: both classes must be present");

  const auto idx = order_by_score(scores, /*descending=*/false);
  const auto n = static_cast<std::size_t>(scores.size());
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores(idx[j + 1]) == scores(idx[i])) ++j;
    const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t t = i; t <= j; ++t)
      if (labels(idx[t]) == 1) rank_sum_pos += midrank;
    i = j + 1;
  }
  const double u = rank_sum_pos - 0.5 * static_cast<double>(positives) *
                                      (static_cast<double>(positives) + 1.0);
  return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

double pr_auc(const Eigen::VectorXd& scores, const Eigen::VectorXi& labels) {
  check_inputs(scores, labels);
  const long positives = (labels.array() == 1).count();
  if (positives == 0) throw DomainError("pr_auc: no positives present");

  const auto idx = order_by_score(scores, /*descending=*/true);
  const auto n = static_cast<std::size_t>(scores.size());
  double area = 0.0;
  double prev_recall = 0.0;
  long tp = 0;
  long predicted = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores(idx[j + 1]) == scores(idx[i])) ++j;
    for (std::size_t t = i; t <= j; ++t) {
      ++predicted;
      if (labels(idx[t]) == 1) ++tp;
    }
    const double recall = static_cast<double>(tp) / static_cast<double>(positives);
    const double precision = static_cast<double>(tp) / static_cast<double>(predicted);
    area += (recall - prev_recall) * precision;
    prev_recall = recall;
    i = j + 1;
  }
  return area;
}

std::pair<double, double> best_f1_threshold(const Eigen::VectorXd& scores,
                                            const Eigen::VectorXi& labels) {
  check_inputs(scores, labels);
  const long positives = (labels.array() == 1).count();
  if (positives == 0 || positives == labels.size())
    throw DomainError("best_f1_threshold: both classes must be present");

  std::vector<double> distinct(scores.data(), scores.data() + scores.size());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  // Finite sentinels below the minimum and above the maximum stand in for
  // the -inf / +inf endpoints (same classifications, serializable value).
  std::vector<double> candidates;
  candidates.reserve(distinct.size() + 1);
  candidates.push_back(distinct.front() - 1.0);
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
    candidates.push_back(0.5 * (distinct[i] + distinct[i + 1]));
  candidates.push_back(distinct.back() + 1.0);

  double best_threshold = candidates.front();
  double best_f1 = -1.0;
  for (const double t : candidates) {
    const double f1 = confusion_metrics(scores, labels, t).f1;
    if (f1 >= best_f1) {  // candidates ascend, so ties land on the higher threshold
      best_f1 = f1;
      best_threshold = t;
    }
  }
  return {best_threshold, best_f1};
}

ThresholdMetrics confusion_metrics(const Eigen::VectorXd& scores, const Eigen::VectorXi& labels,
                                   double threshold) {
  if (scores.size() != labels.size())
    throw DimensionError("confusion_metrics: score and label counts differ");
  ThresholdMetrics out;
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    const bool predicted_pos = scores(i) > threshold;
    const bool actual_pos = labels(i) == 1;
    if (predicted_pos && actual_pos)
      ++out.confusion.tp;
    else if (predicted_pos && !actual_pos)
      ++out.confusion.fp;
    else if (!predicted_pos && actual_pos)
      ++out.confusion.fn;
    else
      ++out.confusion.tn;
  }
  const auto ratio = [](long num, long den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  out.precision = ratio(out.confusion.tp, out.confusion.tp + out.confusion.fp);
  out.sensitivity = ratio(out.confusion.tp, out.confusion.tp + out.confusion.fn);
  out.f1 = ratio(2 * out.confusion.tp,
                 2 * out.confusion.tp + out.confusion.fp + out.confusion.fn);
  return out;
}

}  // namespace tkm
