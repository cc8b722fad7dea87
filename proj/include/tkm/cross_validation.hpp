#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "tkm/dataset.hpp"
#include "tkm/errors.hpp"
#include "tkm/tkrr.hpp"

namespace tkm {

enum class CvScheme { LeaveOneGroupOut, LeaveOneSeizureIn, KFold };

struct CvSpec {
  CvScheme scheme = CvScheme::KFold;
  int k = 5;                // folds, KFold only
  std::uint64_t seed = 0;   // shuffle seed, KFold only
};

struct CvFold {
  std::string id;  // patient id, "patient/seizure", or "fold<i>"
  std::vector<Eigen::Index> train;
  std::vector<Eigen::Index> test;
};

struct CvPlan {
  CvSpec spec;
  std::vector<CvFold> folds;
};

/// Builds the fold index sets for a scheme.
///
/// - LeaveOneGroupOut: one fold per distinct group id (first-appearance
///   order); that group's rows form the test set.
/// - LeaveOneSeizureIn: one fold per (group, seizure id); train is that
///   seizure's windows plus an equal number of the group's background
///   windows nearest in row order, test is the group's remaining rows with
///   overlap-flagged rows removed.
/// - KFold: rows shuffled by the seed and split into k near-equal chunks.
///
/// Throws DomainError when the scheme cannot produce at least two folds
/// (or, for KFold, when k exceeds the row count).
CvPlan make_cv_plan(const LabeledDataset& data, const CvSpec& spec);

/// One leave-one-seizure-in fold for a specific group and seizure: train is
/// the seizure's windows plus an equal number of the group's background
/// windows nearest in row order; test is the group's remaining rows minus
/// overlap-flagged ones. Throws DomainError when the seizure is absent.
CvFold leave_one_seizure_fold(const LabeledDataset& data, const std::string& group,
                              int seizure_id);

struct GridSearchConfig {
  std::vector<double> ridges;
  std::vector<double> lengthscales;
  Eigen::Index rank = 30;
  Eigen::Index basis_count = 20;
  double half_width = 1.25;
  int sweeps = 1;
  std::uint64_t train_seed = 0;
  CvSpec cv{CvScheme::KFold, 5, 0};
};

struct GridPoint {
  double ridge = 0.0;
  double lengthscale = 0.0;
  double mean_auroc = 0.0;
  int folds_used = 0;
  int folds_skipped = 0;
};

struct GridSearchResult {
  double best_ridge = 0.0;
  double best_lengthscale = 0.0;
  double best_mean_auroc = 0.0;
  std::vector<GridPoint> table;
};

/// Evaluates every (ridge, lengthscale) pair by cross-validated mean test
/// AUROC (scaler fitted per training fold) and returns the maximizer.
/// Ties break toward larger ridge, then larger lengthscale. Folds whose test
/// labels are single-class are skipped and counted in folds_skipped.
GridSearchResult grid_search(const LabeledDataset& data, const GridSearchConfig& cfg);

}  // namespace tkm
