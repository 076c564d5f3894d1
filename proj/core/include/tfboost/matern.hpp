#pragma once

#include <Eigen/Core>

#include "tfboost/grid.hpp"

namespace tfboost {

struct MaternSpec {
  double rho = 3.0;
  double sigma = 1.0;
  double nu = 1.0 / 3.0;
  int n_eigen = 4;

  void validate() const;
};

// Matern covariance gamma(s, t) = C(sqrt(2 nu) |s-t| / rho) with
// C(u) = sigma^2 2^{1-nu} / Gamma(nu) u^nu K_nu(u); C(0) = sigma^2.
double matern_cov(const MaternSpec& spec, double s, double t);

struct MaternEigen {
  Grid grid;
  Eigen::VectorXd eigenvalues;     // first n_eigen, strictly positive, decreasing
  Eigen::MatrixXd eigenfunctions;  // n_eigen x m, unit L2 norm, sign-canonicalized
};

// Nystrom discretization of the covariance operator on the given grid
// (square-root trapezoid weighting, symmetric eigensolve, unweighting).
MaternEigen matern_eigen(const MaternSpec& spec, const Grid& grid);

// Linear interpolation of the eigenfunctions onto a coarser evaluation grid.
Eigen::MatrixXd interpolate_eigenfunctions(const MaternEigen& eig, const Grid& to);

}  // namespace tfboost
