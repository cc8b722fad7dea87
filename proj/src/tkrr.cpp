#include "tkm/tkrr.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

namespace tkm {

namespace {

std::vector<Eigen::Index> resolve_update_dims(const std::vector<Eigen::Index>& requested,
                                              Eigen::Index dims) {
  std::vector<Eigen::Index> out = requested;
  if (out.empty()) {
    out.resize(static_cast<std::size_t>(dims));
    for (Eigen::Index d = 0; d < dims; ++d) out[static_cast<std::size_t>(d)] = d;
    return out;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.front() < 0 || out.back() >= dims)
    throw DimensionError("update_dims: dimension index out of range");
  return out;
}

// Caches the per-dimension feature matrices, factor projections and factor
// Gram matrices so that one factor update costs O(N M^2 R^2).
class AlsWorkspace {
 public:
  AlsWorkspace(const Eigen::MatrixXd& scaled_features, const Eigen::VectorXd& targets,
               const FeatureMapConfig& map, CpdTensor weights, double ridge)
      : map_(map), weights_(std::move(weights)), targets_(targets), ridge_(ridge) {
    const Eigen::Index dims = map_.dims();
    if (scaled_features.cols() != dims)
      throw DimensionError("als: feature dimension does not match the map");
    if (scaled_features.rows() != targets.size())
      throw DimensionError("als: row count does not match target count");
    if (scaled_features.rows() < 1) throw DimensionError("als: empty training set");
    phi_.reserve(static_cast<std::size_t>(dims));
    for (Eigen::Index d = 0; d < dims; ++d)
      phi_.push_back(feature_matrix(scaled_features.col(d), d, map_));
    projections_.resize(static_cast<std::size_t>(dims));
    grams_.resize(static_cast<std::size_t>(dims));
    for (Eigen::Index d = 0; d < dims; ++d) refresh(d);
  }

  // Solves the normal equations for one factor and installs the result.
  // Returns the full objective after the update.
  double update_factor(Eigen::Index dim) {
    const Eigen::Index n = targets_.size();
    const Eigen::Index m = phi_[static_cast<std::size_t>(dim)].cols();
    const Eigen::Index r = weights_.rank();

    Eigen::MatrixXd z = Eigen::MatrixXd::Ones(n, r);
    Eigen::MatrixXd h_excl = Eigen::MatrixXd::Ones(r, r);
    for (Eigen::Index d = 0; d < map_.dims(); ++d) {
      if (d == dim) continue;
      z = z.cwiseProduct(projections_[static_cast<std::size_t>(d)]);
      h_excl = h_excl.cwiseProduct(grams_[static_cast<std::size_t>(d)]);
    }

    // Row n of the design matrix is vec(phi_n z_n^T), column-major, so
    // column (r*M + i) holds z(:, r) .* phi(:, i).
    Eigen::MatrixXd design(n, m * r);
    for (Eigen::Index c = 0; c < r; ++c)
      design.middleCols(c * m, m) =
          phi_[static_cast<std::size_t>(dim)].array().colwise() * z.col(c).array();

    Eigen::MatrixXd system = design.transpose() * design;
    for (Eigen::Index cr = 0; cr < r; ++cr)
      for (Eigen::Index cc = 0; cc < r; ++cc)
        system.block(cr * m, cc * m, m, m).diagonal().array() += ridge_ * h_excl(cr, cc);
    const Eigen::VectorXd rhs = design.transpose() * targets_;

    Eigen::VectorXd solution;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
    bool ok = ldlt.info() == Eigen::Success;
    if (ok) {
      solution = ldlt.solve(rhs);
      const double residual = (system.selfadjointView<Eigen::Lower>() * solution - rhs).norm();
      const double scale = system.cwiseAbs().maxCoeff() * solution.norm() + rhs.norm() + 1.0;
      ok = solution.allFinite() && residual <= 1e-8 * scale;
    }
    if (!ok) {
      solution = min_norm_solve(design, h_excl, m, r);
      ++fallbacks_;
    }

    weights_.factors[static_cast<std::size_t>(dim)] =
        Eigen::Map<const Eigen::MatrixXd>(solution.data(), m, r);
    refresh(dim);
    return objective_value();
  }

  double objective_value() const {
    const Eigen::Index n = targets_.size();
    const Eigen::Index r = weights_.rank();
    Eigen::MatrixXd prod = Eigen::MatrixXd::Ones(n, r);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Ones(r, r);
    for (Eigen::Index d = 0; d < map_.dims(); ++d) {
      prod = prod.cwiseProduct(projections_[static_cast<std::size_t>(d)]);
      gram = gram.cwiseProduct(grams_[static_cast<std::size_t>(d)]);
    }
    const Eigen::VectorXd residual = prod.rowwise().sum() - targets_;
    return residual.squaredNorm() + ridge_ * gram.sum();
  }

  const CpdTensor& weights() const { return weights_; }
  int fallbacks() const { return fallbacks_; }

 private:
  void refresh(Eigen::Index dim) {
    const auto d = static_cast<std::size_t>(dim);
    projections_[d] = phi_[d] * weights_.factors[d];
    grams_[d] = weights_.factors[d].transpose() * weights_.factors[d];
  }

  // Minimum-norm solution of the stacked least-squares problem
  // [design; sqrt(ridge) * (sqrtm(H) kron I)] v = [y; 0].
  Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& design, const Eigen::MatrixXd& h_excl,
                                 Eigen::Index m, Eigen::Index r) const {
    const Eigen::Index n = design.rows();
    Eigen::Index extra = 0;
    Eigen::MatrixXd h_root;
    if (ridge_ > 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_excl);
      const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
      h_root = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose();
      extra = m * r;
    }
    Eigen::MatrixXd stacked(n + extra, m * r);
    stacked.topRows(n) = design;
    if (extra > 0) {
      stacked.bottomRows(extra).setZero();
      const double s = std::sqrt(ridge_);
      for (Eigen::Index cr = 0; cr < r; ++cr)
        for (Eigen::Index cc = 0; cc < r; ++cc)
          stacked.block(n + cr * m, cc * m, m, m).diagonal().array() += s * h_root(cr, cc);
    }
    Eigen::VectorXd target = Eigen::VectorXd::Zero(n + extra);
    target.head(n) = targets_;
    return stacked.completeOrthogonalDecomposition().solve(target);
  }

  FeatureMapConfig map_;
  CpdTensor weights_;
  Eigen::VectorXd targets_;
  double ridge_;
  std::vector<Eigen::MatrixXd> phi_;          // N x M_d
  std::vector<Eigen::MatrixXd> projections_;  // N x R
  std::vector<Eigen::MatrixXd> grams_;        // R x R
  int fallbacks_ = 0;
};

TkrrModel run_als(const LabeledDataset& scaled, const TrainConfig& cfg,
                  const FeatureMapConfig& map, const ScalerParams& scaler,
                  const FitObserver& observer) {
  map.validate();
  cfg.validate(map.dims());
  scaled.validate();

  TkrrModel model;
  model.feature_map = map;
  model.scaler = scaler;
  model.ridge = cfg.ridge;
  model.weights = init_factors(cfg, map);

  const auto dims = resolve_update_dims(cfg.update_dims, map.dims());
  const long cap = cfg.max_factor_updates.value_or(
      static_cast<long>(cfg.sweeps) * static_cast<long>(dims.size()));
  if (cfg.sweeps == 0 || cap == 0) return model;

  AlsWorkspace workspace(scaled.features, scaled.labels.cast<double>(), map,
                         model.weights, cfg.ridge);
  long updates = 0;
  for (int sweep = 0; sweep < cfg.sweeps && updates < cap; ++sweep) {
    for (const Eigen::Index d : dims) {
      if (updates >= cap) break;
      model.history.push_back(workspace.update_factor(d));
      ++updates;
      if (observer) observer(updates, workspace.weights());
    }
  }
  model.weights = workspace.weights();
  model.solver_fallbacks = workspace.fallbacks();
  return model;
}

}  // namespace

void TrainConfig::validate(Eigen::Index dims) const {
  if (rank < 1) throw DimensionError("TrainConfig: rank must be >= 1");
  if (!(ridge >= 0.0)) throw DomainError("TrainConfig: ridge must be >= 0");
  if (sweeps < 0) throw DomainError("TrainConfig: sweeps must be >= 0");
  if (max_factor_updates && *max_factor_updates < 0)
    throw DomainError("TrainConfig: max_factor_updates must be >= 0");
  if (!update_dims.empty())
    for (const auto d : update_dims)
      if (d < 0 || d >= dims) throw DimensionError("TrainConfig: update dimension out of range");
}

CpdTensor init_factors(const TrainConfig& cfg, const FeatureMapConfig& map) {
  map.validate();
  cfg.validate(map.dims());
  if (cfg.warm_start) {
    const CpdTensor& warm = *cfg.warm_start;
    warm.validate();
    if (warm.rank() != cfg.rank)
      throw DimensionError("init_factors: warm-start rank does not match config");
    const auto sizes = warm.mode_sizes();
    if (sizes.size() != map.basis_counts.size() ||
        !std::equal(sizes.begin(), sizes.end(), map.basis_counts.begin()))
      throw DimensionError("init_factors: warm-start mode sizes do not match the map");
    return warm;
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CpdTensor w;
  w.factors.reserve(map.basis_counts.size());
  for (const Eigen::Index m : map.basis_counts) {
    Eigen::MatrixXd factor(m, cfg.rank);
    for (Eigen::Index c = 0; c < cfg.rank; ++c)
      for (Eigen::Index i = 0; i < m; ++i) factor(i, c) = normal(rng);
    w.factors.push_back(std::move(factor));
  }
  return w;
}

std::vector<Eigen::MatrixXd> dimension_projections(const Eigen::MatrixXd& scaled_features,
                                                   const CpdTensor& weights,
                                                   const FeatureMapConfig& map) {
  map.validate();
  weights.validate();
  if (scaled_features.cols() != map.dims())
    throw DimensionError("dimension_projections: feature dimension mismatch");
  const auto sizes = weights.mode_sizes();
  if (sizes.size() != map.basis_counts.size() ||
      !std::equal(sizes.begin(), sizes.end(), map.basis_counts.begin()))
    throw DimensionError("dimension_projections: weights do not match the map");
  std::vector<Eigen::MatrixXd> q;
  q.reserve(static_cast<std::size_t>(map.dims()));
  for (Eigen::Index d = 0; d < map.dims(); ++d)
    q.push_back(feature_matrix(scaled_features.col(d), d, map) *
                weights.factors[static_cast<std::size_t>(d)]);
  return q;
}

FactorUpdate als_factor_update(Eigen::Index dim, const Eigen::MatrixXd& scaled_features,
                               const Eigen::VectorXd& targets, const CpdTensor& weights,
                               double ridge, const FeatureMapConfig& map) {
  if (dim < 0 || dim >= map.dims())
    throw DimensionError("als_factor_update: dimension index out of range");
  AlsWorkspace workspace(scaled_features, targets, map, weights, ridge);
  FactorUpdate out;
  out.objective = workspace.update_factor(dim);
  out.factor = workspace.weights().factors[static_cast<std::size_t>(dim)];
  out.min_norm_fallback = workspace.fallbacks() > 0;
  return out;
}

TkrrModel fit(const LabeledDataset& scaled, const TrainConfig& cfg,
              const FeatureMapConfig& map, const ScalerParams& scaler,
              const FitObserver& observer) {
  return run_als(scaled, cfg, map, scaler, observer);
}

TkrrModel finetune(const TkrrModel& source, const LabeledDataset& scaled,
                   const FinetuneOptions& opts, const FitObserver& observer) {
  TrainConfig cfg;
  cfg.rank = source.weights.rank();
  cfg.ridge = source.ridge;
  cfg.sweeps = opts.sweeps;
  cfg.warm_start = source.weights;
  cfg.update_dims = opts.update_dims;
  cfg.max_factor_updates = opts.max_factor_updates;
  TkrrModel model = run_als(scaled, cfg, source.feature_map, source.scaler, observer);
  model.threshold = source.threshold;
  return model;
}

Eigen::VectorXd score_scaled_batch(const CpdTensor& weights, const FeatureMapConfig& map,
                                   const Eigen::MatrixXd& scaled_features) {
  const auto q = dimension_projections(scaled_features, weights, map);
  Eigen::MatrixXd prod = Eigen::MatrixXd::Ones(scaled_features.rows(), weights.rank());
  for (const auto& qd : q) prod = prod.cwiseProduct(qd);
  return prod.rowwise().sum();
}

double score_scaled(const TkrrModel& model, const Eigen::VectorXd& scaled_point) {
  Eigen::VectorXd acc = Eigen::VectorXd::Ones(model.weights.rank());
  for (Eigen::Index d = 0; d < model.feature_map.dims(); ++d) {
    const Eigen::VectorXd phi = local_feature_map(scaled_point(d), d, model.feature_map);
    acc = acc.cwiseProduct((phi.transpose() * model.weights.factors[static_cast<std::size_t>(d)])
                               .transpose());
  }
  return acc.sum();
}

double predict_score(const TkrrModel& model, const Eigen::VectorXd& raw_features) {
  return score_scaled(model, apply_scaler_row(model.scaler, raw_features));
}

Eigen::VectorXd predict_scores(const TkrrModel& model, const Eigen::MatrixXd& raw_features,
                               long* clamped) {
  ScaledFeatures scaled = apply_scaler(model.scaler, raw_features);
  if (clamped != nullptr) *clamped += scaled.clamped;
  return score_scaled_batch(model.weights, model.feature_map, scaled.values);
}

int predict_label(const TkrrModel& model, const Eigen::VectorXd& raw_features) {
  return predict_score(model, raw_features) > model.threshold ? 1 : -1;
}

double objective(const CpdTensor& weights, const FeatureMapConfig& map,
                 const Eigen::MatrixXd& scaled_features, const Eigen::VectorXd& targets,
                 double ridge) {
  if (scaled_features.rows() != targets.size())
    throw DimensionError("objective: row count does not match target count");
  const Eigen::VectorXd scores = score_scaled_batch(weights, map, scaled_features);
  return (scores - targets).squaredNorm() + ridge * cpd_inner_product(weights, weights);
}

double objective(const TkrrModel& model, const LabeledDataset& scaled, double ridge) {
  return objective(model.weights, model.feature_map, scaled.features,
                   scaled.labels.cast<double>(), ridge);
}

}  // namespace tkm
