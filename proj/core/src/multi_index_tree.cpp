#include "tfboost/multi_index_tree.hpp"

#include <string>
#include <utility>

#include "tfboost/errors.hpp"

namespace tfboost {

namespace {

void check_widths(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& scalars,
                  Eigen::Index n_rows) {
  if (scores.rows() != n_rows) throw DimensionError("multi-index tree: row count mismatch");
  if (scalars.size() > 0 && scalars.rows() != n_rows) {
    throw DimensionError("multi-index tree: scalar row count mismatch");
  }
}

Eigen::MatrixXd with_scalars(Eigen::MatrixXd projections, const Eigen::MatrixXd& scalars) {
  if (scalars.cols() == 0) return projections;
  Eigen::MatrixXd out(projections.rows(), projections.cols() + scalars.cols());
  out.leftCols(projections.cols()) = projections;
  out.rightCols(scalars.cols()) = scalars;
  return out;
}

Box angle_box(int k, int d) {
  const int per_index = d - 1;
  Eigen::VectorXd lo(k * per_index), hi(k * per_index);
  for (int j = 0; j < k; ++j) {
    for (int l = 0; l < per_index; ++l) {
      lo(j * per_index + l) = angle_lower(l);
      hi(j * per_index + l) = angle_upper(l);
    }
  }
  return Box(std::move(lo), std::move(hi));
}

std::vector<Direction> directions_from_angles(const Eigen::VectorXd& angles, int k, int d) {
  std::vector<Direction> dirs;
  dirs.reserve(k);
  for (int j = 0; j < k; ++j) {
    dirs.push_back(from_angles(angles.segment(j * (d - 1), d - 1)));
  }
  return dirs;
}

}  // namespace

Eigen::MatrixXd projected_features(const Eigen::MatrixXd& scores,
                                   const std::vector<Direction>& directions,
                                   const Eigen::MatrixXd& scalars) {
  Eigen::MatrixXd proj(scores.rows(), directions.size());
  for (std::size_t j = 0; j < directions.size(); ++j) {
    if (directions[j].dim() != scores.cols()) {
      throw DimensionError("projected_features: direction dimension mismatch");
    }
    proj.col(j) = scores * directions[j].coeffs;
  }
  return with_scalars(std::move(proj), scalars);
}

MultiIndexTree fit_type_a(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& scalars,
                          const Eigen::VectorXd& residuals, int k,
                          const TreeConfig& tree_cfg, const MultiStartConfig& opt_cfg,
                          Rng& rng) {
  const int n = static_cast<int>(scores.rows());
  const int d = static_cast<int>(scores.cols());
  if (k < 1) throw DomainError("fit_type_a: K must be >= 1");
  if (n < 2 * tree_cfg.min_node) {
    throw DomainError("fit_type_a: need at least " +
                      std::to_string(2 * tree_cfg.min_node) + " rows, got " +
                      std::to_string(n));
  }
  check_widths(scores, scalars, residuals.size());

  const Objective objective = [&](const Eigen::VectorXd& angles) {
    const auto dirs = directions_from_angles(angles, k, d);
    const Eigen::MatrixXd features = projected_features(scores, dirs, scalars);
    const Tree tree = fit_tree(features, residuals, tree_cfg);
    return (residuals - predict_tree(tree, features)).squaredNorm();
  };

  const NmResult opt = multi_start(objective, angle_box(k, d), opt_cfg, rng);

  MultiIndexTree model;
  model.kind = LearnerKind::TypeA;
  model.directions = directions_from_angles(opt.argmin, k, d);
  model.uses_scalars = scalars.cols() > 0;
  model.tree = fit_tree(projected_features(scores, model.directions, scalars),
                        residuals, tree_cfg);
  return model;
}

MultiIndexTree fit_type_b(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& scalars,
                          const Eigen::VectorXd& residuals, int pool_size,
                          const TreeConfig& tree_cfg, Rng& rng) {
  const int d = static_cast<int>(scores.cols());
  if (pool_size < 1) throw DomainError("fit_type_b: pool size must be >= 1");
  check_widths(scores, scalars, residuals.size());

  MultiIndexTree model;
  model.kind = LearnerKind::TypeB;
  model.directions.reserve(pool_size);
  for (int j = 0; j < pool_size; ++j) model.directions.push_back(sample_direction(d, rng));
  model.uses_scalars = scalars.cols() > 0;
  model.tree = fit_tree(projected_features(scores, model.directions, scalars),
                        residuals, tree_cfg);
  return model;
}

Eigen::VectorXd predict_mit(const MultiIndexTree& model, const Eigen::MatrixXd& scores,
                            const Eigen::MatrixXd& scalars) {
  const Eigen::Index n = scores.rows();
  check_widths(scores, scalars, n);
  const int n_dirs = model.index_count();
  const int q = model.uses_scalars ? static_cast<int>(scalars.cols()) : 0;
  if (model.tree.n_features != n_dirs + q) {
    throw DimensionError("predict_mit: scalar covariate width changed since fit");
  }
  if (n_dirs > 0 && model.directions[0].dim() != scores.cols()) {
    throw DimensionError("predict_mit: score dimension mismatch");
  }

  // Fill only the columns the tree routes on; stumps touch a handful of the
  // pool's P projections.
  Eigen::MatrixXd features = Eigen::MatrixXd::Zero(n, n_dirs + q);
  for (int f : model.tree.used_features()) {
    if (f < n_dirs) features.col(f) = scores * model.directions[f].coeffs;
  }
  if (q > 0) features.rightCols(q) = scalars;
  return predict_tree(model.tree, features);
}

}  // namespace tfboost
