#pragma once

#include <Eigen/Core>
#include <vector>

#include "tfboost/direction.hpp"
#include "tfboost/nelder_mead.hpp"
#include "tfboost/tree.hpp"

namespace tfboost {

enum class LearnerKind { TypeA, TypeB };

// A fitted functional multi-index tree: a CART over projections of basis
// scores onto stored directions (K jointly optimized ones for Type A, the
// whole random candidate pool for Type B), plus any scalar covariates as
// trailing features.
struct MultiIndexTree {
  LearnerKind kind = LearnerKind::TypeB;
  std::vector<Direction> directions;
  Tree tree;
  bool uses_scalars = false;

  int index_count() const { return static_cast<int>(directions.size()); }
};

// Feature matrix [scores * c_1, ..., scores * c_k, scalars].
Eigen::MatrixXd projected_features(const Eigen::MatrixXd& scores,
                                   const std::vector<Direction>& directions,
                                   const Eigen::MatrixXd& scalars);

// Type A: the K directions are chosen by derivative-free minimization of the
// refit tree's training SSE over concatenated spherical angles (the inner
// level refits the tree at every objective evaluation).
MultiIndexTree fit_type_a(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& scalars,
                          const Eigen::VectorXd& residuals, int k,
                          const TreeConfig& tree_cfg, const MultiStartConfig& opt_cfg,
                          Rng& rng);

// Type B: draw a fresh pool of P random canonical directions and let CART
// pick per-split among all pool projections.
MultiIndexTree fit_type_b(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& scalars,
                          const Eigen::VectorXd& residuals, int pool_size,
                          const TreeConfig& tree_cfg, Rng& rng);

// Recompute projections for the stored directions and route through the
// tree. Only features the tree actually splits on are materialized.
Eigen::VectorXd predict_mit(const MultiIndexTree& model, const Eigen::MatrixXd& scores,
                            const Eigen::MatrixXd& scalars);

}  // namespace tfboost
