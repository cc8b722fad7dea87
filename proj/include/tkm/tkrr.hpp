#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tkm/cpd.hpp"
#include "tkm/dataset.hpp"
#include "tkm/feature_map.hpp"
#include "tkm/scaler.hpp"

namespace tkm {

/// Training knobs for the alternating least-squares solver. One "factor
/// update" solves the regularized normal equations for a single factor
/// matrix; one sweep visits every dimension in update_dims once, in
/// ascending index order.
struct TrainConfig {
  Eigen::Index rank = 30;
  double ridge = 1e-4;
  int sweeps = 1;
  std::uint64_t seed = 0;
  std::optional<CpdTensor> warm_start;      // empty -> i.i.d. standard-normal init
  std::vector<Eigen::Index> update_dims;    // 0-based; empty -> all dimensions
  std::optional<long> max_factor_updates;   // hard cap on single-factor solves

  void validate(Eigen::Index dims) const;
};

/// The serializable classifier: feature map + CPD weights + the scaler that
/// maps raw features into the hyperbox, plus the decision threshold and the
/// objective trace of the fit that produced it.
struct TkrrModel {
  FeatureMapConfig feature_map;
  CpdTensor weights;
  ScalerParams scaler;
  double ridge = 1e-4;
  double threshold = 0.0;
  std::vector<double> history;  // objective value after every factor update
  int solver_fallbacks = 0;     // minimum-norm solves taken; not serialized
};

/// Invoked after every factor update with the number of updates completed
/// so far (1-based) and the current weights.
using FitObserver = std::function<void(long updates_done, const CpdTensor& weights)>;

/// Standard-normal factors from the config seed, or a deep copy of the warm
/// start. Throws DimensionError on warm-start shape or rank mismatch.
CpdTensor init_factors(const TrainConfig& cfg, const FeatureMapConfig& map);

/// Q^(d)(n, r) = phi^(d)(x_{n,d}) . w_r^(d) for every dimension.
std::vector<Eigen::MatrixXd> dimension_projections(const Eigen::MatrixXd& scaled_features,
                                                   const CpdTensor& weights,
                                                   const FeatureMapConfig& map);

struct FactorUpdate {
  Eigen::MatrixXd factor;
  double objective;               // full regularized objective after the update
  bool min_norm_fallback = false; // set when the normal equations were singular
};

/// Solves the block least-squares problem for one factor matrix, holding the
/// others fixed. The regularizer couples blocks through the Hadamard product
/// of the other factors' Gram matrices, so each update minimizes the exact
/// global objective over its block.
FactorUpdate als_factor_update(Eigen::Index dim, const Eigen::MatrixXd& scaled_features,
                               const Eigen::VectorXd& targets, const CpdTensor& weights,
                               double ridge, const FeatureMapConfig& map);

/// Runs cfg.sweeps full ALS passes on data whose features are already scaled
/// into the hyperbox. The scaler is recorded in the model for prediction on
/// raw inputs; the threshold is left at 0 for the caller to select.
TkrrModel fit(const LabeledDataset& scaled, const TrainConfig& cfg,
              const FeatureMapConfig& map, const ScalerParams& scaler,
              const FitObserver& observer = {});

struct FinetuneOptions {
  int sweeps = 1;
  std::vector<Eigen::Index> update_dims;   // 0-based; empty -> all dimensions
  std::optional<long> max_factor_updates;  // counted as single factor updates
};

/// Warm-started ALS on new data with the source model's feature map, scaler
/// and ridge. Zero updates returns a model scoring identically to the source.
TkrrModel finetune(const TkrrModel& source, const LabeledDataset& scaled,
                   const FinetuneOptions& opts, const FitObserver& observer = {});

/// Scores for inputs already inside the hyperbox.
Eigen::VectorXd score_scaled_batch(const CpdTensor& weights, const FeatureMapConfig& map,
                                   const Eigen::MatrixXd& scaled_features);
double score_scaled(const TkrrModel& model, const Eigen::VectorXd& scaled_point);

/// Prediction on raw features: applies the model scaler (clamping into the
/// box) and evaluates sum_r prod_d phi^(d)(x_d) . w_r^(d).
double predict_score(const TkrrModel& model, const Eigen::VectorXd& raw_features);
Eigen::VectorXd predict_scores(const TkrrModel& model, const Eigen::MatrixXd& raw_features,
                               long* clamped = nullptr);

/// +1 when the score exceeds the stored threshold, else -1.
int predict_label(const TkrrModel& model, const Eigen::VectorXd& raw_features);

/// Squared-error loss plus ridge * <W, W>_F on scaled data.
double objective(const CpdTensor& weights, const FeatureMapConfig& map,
                 const Eigen::MatrixXd& scaled_features, const Eigen::VectorXd& targets,
                 double ridge);
double objective(const TkrrModel& model, const LabeledDataset& scaled, double ridge);

}  // namespace tkm
