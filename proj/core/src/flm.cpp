#include "tfboost/flm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "tfboost/errors.hpp"

namespace tfboost {

namespace {

// Pseudo-inverse solve of the (small, symmetric) normal equations; flags
// rank deficiency instead of failing.
Eigen::VectorXd solve_normal(const Eigen::MatrixXd& lhs, const Eigen::VectorXd& rhs,
                             bool* rank_deficient) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lhs);
  const double tol = 1e-12 * std::max(eig.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
  Eigen::VectorXd inv_ev(eig.eigenvalues().size());
  *rank_deficient = false;
  for (Eigen::Index i = 0; i < inv_ev.size(); ++i) {
    if (eig.eigenvalues()(i) > tol) {
      inv_ev(i) = 1.0 / eig.eigenvalues()(i);
    } else {
      inv_ev(i) = 0.0;
      *rank_deficient = true;
    }
  }
  return eig.eigenvectors() * inv_ev.asDiagonal() *
         eig.eigenvectors().transpose() * rhs;
}

Eigen::MatrixXd design_with_intercept(const Eigen::MatrixXd& features,
                                      const Eigen::MatrixXd& scalars) {
  Eigen::MatrixXd x(features.rows(), 1 + features.cols() + scalars.cols());
  x.col(0).setOnes();
  x.middleCols(1, features.cols()) = features;
  if (scalars.cols() > 0) x.rightCols(scalars.cols()) = scalars;
  return x;
}

}  // namespace

std::vector<double> default_lambda_grid() {
  std::vector<double> grid(20);
  const double lo = std::log(1e-8), hi = std::log(1e2);
  for (int i = 0; i < 20; ++i) grid[i] = std::exp(lo + (hi - lo) * i / 19.0);
  return grid;
}

FlmModel fit_flm1(const FunctionalSample& train, const FunctionalSample& valid,
                  const BasisSystem& basis, const std::vector<double>& lambda_grid) {
  if (!train.has_response() || !valid.has_response()) {
    throw DomainError("fit_flm1: responses required");
  }
  if (lambda_grid.empty()) throw DomainError("fit_flm1: empty lambda grid");

  const Eigen::MatrixXd scores = project_scores(train, basis);
  const Eigen::MatrixXd x = design_with_intercept(scores, train.scalars);
  const Eigen::MatrixXd xtx = x.transpose() * x;
  const Eigen::VectorXd xty = x.transpose() * *train.response;
  const Eigen::MatrixXd omega = second_derivative_penalty(basis);
  const int d = basis.d();
  const int q = train.q();

  const Eigen::MatrixXd valid_design =
      design_with_intercept(project_scores(valid, basis), valid.scalars);

  FlmModel best;
  double best_mspe = std::numeric_limits<double>::infinity();
  for (double lambda : lambda_grid) {
    Eigen::MatrixXd lhs = xtx;
    lhs.block(1, 1, d, d) += lambda * omega;
    bool deficient = false;
    const Eigen::VectorXd coef = solve_normal(lhs, xty, &deficient);
    const double vm = (valid_design * coef - *valid.response).squaredNorm() / valid.n();
    if (vm < best_mspe) {
      best_mspe = vm;
      best.kind = FlmModel::Kind::Spline;
      best.penalty = lambda;
      best.rank_deficient = deficient;
      best.intercept = coef(0);
      best.grid = basis.grid;
      best.beta = basis.ortho.transpose() * coef.segment(1, d);
      best.scalar_coeffs = q > 0 ? Eigen::VectorXd(coef.tail(q)) : Eigen::VectorXd();
    }
  }
  return best;
}

FlmModel fit_flm2(const FunctionalSample& train, double variance_fraction, int p_cap) {
  if (!train.has_response()) throw DomainError("fit_flm2: responses required");
  const int max_p = std::min(p_cap, std::min(train.n(), train.m()) - 1);
  if (max_p < 1) throw RankError("fit_flm2: sample too small for any component");

  FpcaResult full = fpca(train, max_p);
  const double total = total_variance(train);
  int p = max_p;
  if (total > 0.0) {
    double cum = 0.0;
    for (int j = 0; j < max_p; ++j) {
      cum += full.eigenvalues(j);
      if (cum >= variance_fraction * total) {
        p = j + 1;
        break;
      }
    }
  }

  FlmModel model;
  model.kind = FlmModel::Kind::Fpc;
  model.n_components = p;
  model.fpca_fit = FpcaResult{full.grid, full.mean, full.eigenfunctions.topRows(p),
                              full.eigenvalues.head(p), full.scores.leftCols(p)};

  const Eigen::MatrixXd x =
      design_with_intercept(model.fpca_fit->scores, train.scalars);
  bool deficient = false;
  const Eigen::VectorXd coef =
      solve_normal(x.transpose() * x, x.transpose() * *train.response, &deficient);
  model.rank_deficient = deficient;

  // Fold the score regression into a coefficient function so prediction is
  // a single inner product: beta(t) = sum_j eta_j phi_j(t).
  const int q = train.q();
  const Eigen::VectorXd eta = coef.segment(1, p);
  model.grid = full.grid;
  model.beta = model.fpca_fit->eigenfunctions.transpose() * eta;
  model.intercept = coef(0) - trapezoid_inner(model.grid, model.fpca_fit->mean, model.beta);
  model.scalar_coeffs = q > 0 ? Eigen::VectorXd(coef.tail(q)) : Eigen::VectorXd();
  return model;
}

Eigen::VectorXd predict_flm(const FlmModel& model, const FunctionalSample& sample) {
  const int n = sample.n();
  if (model.scalar_coeffs.size() > 0 && sample.q() != model.scalar_coeffs.size()) {
    throw DimensionError("predict_flm: scalar covariate width mismatch");
  }
  const bool same_grid = sample.grid.size() == model.grid.size() &&
                         sample.grid.points().isApprox(model.grid.points());
  Eigen::VectorXd out(n);
  const Eigen::VectorXd weighted_beta =
      model.grid.weights().asDiagonal() * model.beta;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x = same_grid
        ? Eigen::VectorXd(sample.values.row(i))
        : resample_linear(sample.grid, sample.values.row(i), model.grid);
    out(i) = model.intercept + weighted_beta.dot(x);
  }
  if (model.scalar_coeffs.size() > 0) out += sample.scalars * model.scalar_coeffs;
  return out;
}

double mspe_flm(const FlmModel& model, const FunctionalSample& test) {
  if (!test.has_response()) throw DomainError("mspe_flm: test responses required");
  return (predict_flm(model, test) - *test.response).squaredNorm() / test.n();
}

}  // namespace tfboost
