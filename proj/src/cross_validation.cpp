#include "tkm/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "tkm/metrics.hpp"
#include "tkm/scaler.hpp"

namespace tkm {

namespace {

CvPlan plan_leave_one_group_out(const LabeledDataset& data) {
  const auto groups = data.distinct_groups();
  if (groups.size() < 2)
    throw DomainError("leave_one_group_out: fewer than 2 groups");
  CvPlan plan;
  plan.spec.scheme = CvScheme::LeaveOneGroupOut;
  for (const auto& group : groups) {
    CvFold fold;
    fold.id = group;
    for (Eigen::Index i = 0; i < data.size(); ++i) {
      if (data.group_ids[static_cast<std::size_t>(i)] == group)
        fold.test.push_back(i);
      else
        fold.train.push_back(i);
    }
    plan.folds.push_back(std::move(fold));
  }
  return plan;
}

// Train rows for one leave-one-seizure-in fold: the seizure's windows plus
// an equal number of the same group's background windows nearest in row
// order (rows are in temporal order within a recording).
std::vector<Eigen::Index> seizure_train_rows(const LabeledDataset& data,
                                             const std::vector<Eigen::Index>& group_rows,
                                             int seizure_id) {
  std::vector<Eigen::Index> seizure_rows;
  std::vector<Eigen::Index> background_rows;
  for (const Eigen::Index i : group_rows) {
    if (data.seizure_ids[static_cast<std::size_t>(i)] == seizure_id)
      seizure_rows.push_back(i);
    else if (data.seizure_ids[static_cast<std::size_t>(i)] == 0)
      background_rows.push_back(i);
  }
  if (seizure_rows.empty()) return seizure_rows;

  const double center =
      0.5 * (static_cast<double>(seizure_rows.front()) + static_cast<double>(seizure_rows.back()));
  std::stable_sort(background_rows.begin(), background_rows.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     const double da = std::abs(static_cast<double>(a) - center);
                     const double db = std::abs(static_cast<double>(b) - center);
                     if (da != db) return da < db;
                     return a < b;
                   });
  const std::size_t take = std::min(background_rows.size(), seizure_rows.size());
  std::vector<Eigen::Index> train = seizure_rows;
  train.insert(train.end(), background_rows.begin(),
               background_rows.begin() + static_cast<std::ptrdiff_t>(take));
  std::sort(train.begin(), train.end());
  return train;
}

CvPlan plan_leave_one_seizure_in(const LabeledDataset& data) {
  CvPlan plan;
  plan.spec.scheme = CvScheme::LeaveOneSeizureIn;
  for (const auto& group : data.distinct_groups())
    for (const int seizure : data.seizures_of_group(group))
      plan.folds.push_back(leave_one_seizure_fold(data, group, seizure));
  if (plan.folds.size() < 2)
    throw DomainError("leave_one_seizure_in: fewer than 2 seizures");
  return plan;
}

CvPlan plan_k_fold(const LabeledDataset& data, const CvSpec& spec) {
  if (spec.k < 2) throw DomainError("k_fold: k must be >= 2");
  if (static_cast<Eigen::Index>(spec.k) > data.size())
    throw DomainError("k_fold: k exceeds the row count");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(data.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::mt19937_64 rng(spec.seed);
  std::shuffle(order.begin(), order.end(), rng);

  CvPlan plan;
  plan.spec = spec;
  const auto n = static_cast<std::size_t>(data.size());
  const auto k = static_cast<std::size_t>(spec.k);
  std::size_t start = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t len = n / k + (f < n % k ? 1 : 0);
    CvFold fold;
    fold.id = "fold" + std::to_string(f);
    fold.test.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(start + len));
    fold.train.reserve(n - len);
    for (std::size_t t = 0; t < n; ++t)
      if (t < start || t >= start + len) fold.train.push_back(order[t]);
    std::sort(fold.test.begin(), fold.test.end());
    std::sort(fold.train.begin(), fold.train.end());
    plan.folds.push_back(std::move(fold));
    start += len;
  }
  return plan;
}

bool single_class(const Eigen::VectorXi& labels) {
  const long positives = (labels.array() == 1).count();
  return positives == 0 || positives == labels.size();
}

}  // namespace

CvFold leave_one_seizure_fold(const LabeledDataset& data, const std::string& group,
                              int seizure_id) {
  std::vector<Eigen::Index> group_rows;
  for (Eigen::Index i = 0; i < data.size(); ++i)
    if (data.group_ids[static_cast<std::size_t>(i)] == group) group_rows.push_back(i);
  if (group_rows.empty()) throw DomainError("leave_one_seizure_fold: unknown group " + group);

  CvFold fold;
  fold.id = group + "/" + std::to_string(seizure_id);
  fold.train = seizure_train_rows(data, group_rows, seizure_id);
  if (fold.train.empty())
    throw DomainError("leave_one_seizure_fold: group " + group + " has no seizure " +
                      std::to_string(seizure_id));
  const std::set<Eigen::Index> in_train(fold.train.begin(), fold.train.end());
  for (const Eigen::Index i : group_rows) {
    if (in_train.count(i) > 0) continue;
    if (data.overlap_flags[static_cast<std::size_t>(i)]) continue;
    fold.test.push_back(i);
  }
  return fold;
}

CvPlan make_cv_plan(const LabeledDataset& data, const CvSpec& spec) {
  data.validate();
  switch (spec.scheme) {
    case CvScheme::LeaveOneGroupOut:
      return plan_leave_one_group_out(data);
    case CvScheme::LeaveOneSeizureIn:
      return plan_leave_one_seizure_in(data);
    case CvScheme::KFold:
      return plan_k_fold(data, spec);
  }
  throw DomainError("make_cv_plan: unknown scheme");
}

GridSearchResult grid_search(const LabeledDataset& data, const GridSearchConfig& cfg) {
  if (cfg.ridges.empty() || cfg.lengthscales.empty())
    throw DimensionError("grid_search: empty hyperparameter grid");
  data.validate();
  const CvPlan plan = make_cv_plan(data, cfg.cv);

  std::vector<double> ridges = cfg.ridges;
  std::vector<double> lengthscales = cfg.lengthscales;
  std::sort(ridges.begin(), ridges.end());
  std::sort(lengthscales.begin(), lengthscales.end());

  GridSearchResult result;
  result.best_mean_auroc = -std::numeric_limits<double>::infinity();
  bool any_scored = false;
  for (const double ridge : ridges) {
    for (const double lengthscale : lengthscales) {
      FeatureMapConfig map = FeatureMapConfig::uniform(data.dims(), cfg.basis_count,
                                                       cfg.half_width, lengthscale);
      GridPoint point;
      point.ridge = ridge;
      point.lengthscale = lengthscale;
      double auroc_sum = 0.0;
      for (const CvFold& fold : plan.folds) {
        const LabeledDataset train = data.subset(fold.train);
        const LabeledDataset test = data.subset(fold.test);
        if (test.size() == 0 || single_class(test.labels) || train.size() == 0 ||
            single_class(train.labels)) {
          ++point.folds_skipped;
          continue;
        }
        const ScalerParams scaler = fit_scaler(train.features);
        LabeledDataset scaled_train = train;
        scaled_train.features = apply_scaler(scaler, train.features).values;
        TrainConfig train_cfg;
        train_cfg.rank = cfg.rank;
        train_cfg.ridge = ridge;
        train_cfg.sweeps = cfg.sweeps;
        train_cfg.seed = cfg.train_seed;
        const TkrrModel model = fit(scaled_train, train_cfg, map, scaler);
        long clamped = 0;
        const Eigen::VectorXd scores = predict_scores(model, test.features, &clamped);
        auroc_sum += roc_auc(scores, test.labels);
        ++point.folds_used;
      }
      point.mean_auroc = point.folds_used > 0
                             ? auroc_sum / static_cast<double>(point.folds_used)
                             : -std::numeric_limits<double>::infinity();
      // Grids ascend, so >= lands ties on the larger ridge, then the larger
      // lengthscale.
      if (point.folds_used > 0 && point.mean_auroc >= result.best_mean_auroc) {
        result.best_mean_auroc = point.mean_auroc;
        result.best_ridge = ridge;
        result.best_lengthscale = lengthscale;
        any_scored = true;
      }
      result.table.push_back(point);
    }
  }
  if (!any_scored) throw DomainError("grid_search: every fold was single-class");
  return result;
}

}  // namespace tkm
