#include "tfboost/matern.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "tfboost/bessel.hpp"
#include "tfboost/errors.hpp"

namespace tfboost {

void MaternSpec::validate() const {
  if (!(rho > 0.0) || !(sigma > 0.0) || !(nu > 0.0) || n_eigen < 1) {
    throw DomainError("MaternSpec: parameters must be positive");
  }
}

double matern_cov(const MaternSpec& spec, double s, double t) {
  const double u = std::sqrt(2.0 * spec.nu) * std::abs(s - t) / spec.rho;
  if (u < 1e-12) return spec.sigma * spec.sigma;
  return spec.sigma * spec.sigma * std::pow(2.0, 1.0 - spec.nu) /
         std::tgamma(spec.nu) * std::pow(u, spec.nu) * bessel_k(spec.nu, u);
}

MaternEigen matern_eigen(const MaternSpec& spec, const Grid& grid) {
  spec.validate();
  const int m = grid.size();
  if (m < 200) throw DomainError("matern_eigen: need a dense grid (>= 200 points)");
  if (spec.n_eigen >= m) throw DomainError("matern_eigen: too many eigenpairs requested");

  Eigen::MatrixXd kernel(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      kernel(i, j) = kernel(j, i) =
          matern_cov(spec, grid.points()(i), grid.points()(j));
    }
  }

  const Eigen::VectorXd sw = grid.weights().cwiseSqrt();
  const Eigen::MatrixXd weighted = sw.asDiagonal() * kernel * sw.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(weighted);

  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (eig.eigenvalues().minCoeff() < -1e-8 * scale) {
    throw NumericError("matern_eigen: kernel matrix is not numerically PSD (min "
                       "eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()) + ")");
  }

  MaternEigen out{grid, Eigen::VectorXd(spec.n_eigen),
                  Eigen::MatrixXd(spec.n_eigen, m)};
  for (int j = 0; j < spec.n_eigen; ++j) {
    const int k = m - 1 - j;
    out.eigenvalues(j) = eig.eigenvalues()(k);
    Eigen::VectorXd phi = eig.eigenvectors().col(k).cwiseQuotient(sw);
    int imax = 0;
    phi.cwiseAbs().maxCoeff(&imax);
    if (phi(imax) < 0) phi = -phi;
    out.eigenfunctions.row(j) = phi.transpose();
  }
  return out;
}

Eigen::MatrixXd interpolate_eigenfunctions(const MaternEigen& eig, const Grid& to) {
  Eigen::MatrixXd out(eig.eigenfunctions.rows(), to.size());
  for (Eigen::Index j = 0; j < eig.eigenfunctions.rows(); ++j) {
    out.row(j) = resample_linear(eig.grid, eig.eigenfunctions.row(j), to).transpose();
  }
  return out;
}

}  // namespace tfboost
