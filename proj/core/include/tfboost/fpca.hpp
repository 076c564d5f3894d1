#pragma once

#include <Eigen/Core>

#include "tfboost/grid.hpp"

namespace tfboost {

// Functional PCA of discretized curves: eigenfunctions phi_j of the
// quadrature-weighted sample covariance, with scores xi_{ij} = <x_i - mean, phi_j>.
struct FpcaResult {
  Grid grid;
  Eigen::VectorXd mean;            // length m
  Eigen::MatrixXd eigenfunctions;  // p x m, unit L2 norm, largest-|coordinate| positive
  Eigen::VectorXd eigenvalues;     // length p, non-increasing, >= 0
  Eigen::MatrixXd scores;          // n x p

  int p() const { return static_cast<int>(eigenvalues.size()); }
};

FpcaResult fpca(const FunctionalSample& sample, int p);

// Total L2 variance integral(Var x(t) dt); denominator n-1.
double total_variance(const FunctionalSample& sample);

// Scores of new curves against a fitted FPCA (curves resampled if needed).
Eigen::MatrixXd fpca_scores(const FpcaResult& fit, const FunctionalSample& sample);

}  // namespace tfboost
