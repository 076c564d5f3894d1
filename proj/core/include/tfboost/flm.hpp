#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "tfboost/basis.hpp"
#include "tfboost/fpca.hpp"
#include "tfboost/grid.hpp"

namespace tfboost {

// Functional linear model F(x) = mu + <x, beta> + v' eta, fitted either with
// a curvature-penalized spline coefficient (FLM1) or a regression on FPC
// scores (FLM2).
struct FlmModel {
  enum class Kind { Spline, Fpc };

  Kind kind = Kind::Spline;
  double intercept = 0.0;
  Grid grid;                       // where beta is tabulated
  Eigen::VectorXd beta;            // coefficient function values on grid
  Eigen::VectorXd scalar_coeffs;   // length q
  bool rank_deficient = false;     // normal equations solved by pseudo-inverse

  double penalty = 0.0;            // Spline: selected lambda
  std::optional<FpcaResult> fpca_fit;  // Fpc: training FPCA
  int n_components = 0;            // Fpc: selected p

  FlmModel() : grid(Grid::uniform(0.0, 1.0, 2)) {}
};

std::vector<double> default_lambda_grid();  // 20 log-spaced values in [1e-8, 1e2]

// Ridge-type solve in orthonormal basis coefficients with a second-derivative
// penalty; lambda picked by validation MSPE.
FlmModel fit_flm1(const FunctionalSample& train, const FunctionalSample& valid,
                  const BasisSystem& basis,
                  const std::vector<double>& lambda_grid = default_lambda_grid());

// FPCA on the training curves, p = smallest count explaining >= the variance
// fraction (default 99%, capped at 20), then least squares on the scores.
FlmModel fit_flm2(const FunctionalSample& train, double variance_fraction = 0.99,
                  int p_cap = 20);

Eigen::VectorXd predict_flm(const FlmModel& model, const FunctionalSample& sample);

double mspe_flm(const FlmModel& model, const FunctionalSample& test);

}  // namespace tfboost
