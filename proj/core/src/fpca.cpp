#include "tfboost/fpca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <string>

#include "tfboost/errors.hpp"

namespace tfboost {

FpcaResult fpca(const FunctionalSample& sample, int p) {
  const int n = sample.n();
  const int m = sample.m();
  if (p < 1) throw DomainError("fpca: p must be >= 1");
  if (n <= p) throw RankError("fpca: need n > p, got n=" + std::to_string(n));
  if (p >= std::min(n, m)) {
    throw RankError("fpca: p=" + std::to_string(p) + " >= min(n, m)=" +
                    std::to_string(std::min(n, m)));
  }

  Eigen::VectorXd mean = sample.values.colwise().mean();
  Eigen::MatrixXd centered = sample.values.rowwise() - mean.transpose();

  // Discretized covariance operator: weight by square roots of the trapezoid
  // weights so a symmetric eigensolve yields L2-orthonormal eigenfunctions.
  Eigen::VectorXd sw = sample.grid.weights().cwiseSqrt();
  Eigen::MatrixXd weighted = centered * sw.asDiagonal();
  Eigen::MatrixXd cov = weighted.transpose() * weighted / double(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  // SelfAdjointEigenSolver sorts ascending; take the top p in reverse.
  FpcaResult out{sample.grid, std::move(mean), Eigen::MatrixXd(p, m),
                 Eigen::VectorXd(p), Eigen::MatrixXd()};
  for (int j = 0; j < p; ++j) {
    const int k = m - 1 - j;
    out.eigenvalues(j) = std::max(eig.eigenvalues()(k), 0.0);
    Eigen::VectorXd phi = eig.eigenvectors().col(k).cwiseQuotient(sw);
    int imax = 0;
    phi.cwiseAbs().maxCoeff(&imax);
    if (phi(imax) < 0) phi = -phi;
    out.eigenfunctions.row(j) = phi.transpose();
  }
  out.scores = centered * sample.grid.weights().asDiagonal() *
               out.eigenfunctions.transpose();
  return out;
}

double total_variance(const FunctionalSample& sample) {
  Eigen::VectorXd mean = sample.values.colwise().mean();
  Eigen::MatrixXd centered = sample.values.rowwise() - mean.transpose();
  Eigen::VectorXd pointwise = centered.array().square().colwise().sum() /
                              double(sample.n() - 1);
  return sample.grid.weights().dot(pointwise);
}

Eigen::MatrixXd fpca_scores(const FpcaResult& fit, const FunctionalSample& sample) {
  const int n = sample.n();
  Eigen::MatrixXd scores(n, fit.p());
  const bool same_grid = sample.grid.size() == fit.grid.size() &&
                         sample.grid.points().isApprox(fit.grid.points());
  const Eigen::MatrixXd weighted_phi =
      fit.eigenfunctions * fit.grid.weights().asDiagonal();
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x = same_grid
        ? Eigen::VectorXd(sample.values.row(i))
        : resample_linear(sample.grid, sample.values.row(i), fit.grid);
    scores.row(i) = (weighted_phi * (x - fit.mean)).transpose();
  }
  return scores;
}

}  // namespace tfboost
