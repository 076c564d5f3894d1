#include "tfboost/basis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tfboost/errors.hpp"

namespace tfboost {

BSplineBasis::BSplineBasis(double a, double b, int n_interior, int degree)
    : a_(a), b_(b), degree_(degree), d_(n_interior + degree + 1) {
  if (!(a < b)) throw DomainError("BSplineBasis: degenerate interval");
  if (degree < 1) throw DomainError("BSplineBasis: degree must be >= 1");
  if (n_interior < 0) throw DomainError("BSplineBasis: negative interior knot count");

  interior_.resize(n_interior);
  for (int i = 0; i < n_interior; ++i) {
    interior_(i) = a + (b - a) * (i + 1) / (n_interior + 1);
  }
  // Clamped knot vector: endpoints repeated degree+1 times.
  knots_.resize(d_ + degree + 1);
  for (int i = 0; i <= degree; ++i) knots_(i) = a;
  for (int i = 0; i < n_interior; ++i) knots_(degree + 1 + i) = interior_(i);
  for (int i = 0; i <= degree; ++i) knots_(degree + 1 + n_interior + i) = b;
}

int BSplineBasis::find_span(double t) const {
  // Last span [knots_(k), knots_(k+1)) containing t; t == b maps to the
  // final non-degenerate span so the limit from the left applies there.
  const int lo = degree_;
  const int hi = d_;  // knots_(d_) == b
  if (t >= knots_(hi)) return hi - 1;
  if (t <= knots_(lo)) return lo;
  int low = lo, high = hi;
  while (high - low > 1) {
    const int mid = (low + high) / 2;
    if (t < knots_(mid)) high = mid; else low = mid;
  }
  return low;
}

Eigen::VectorXd BSplineBasis::eval(double t) const {
  return eval_derivatives(t, 0).row(0);
}

Eigen::MatrixXd BSplineBasis::eval_derivatives(double t, int order) const {
  if (t < a_ - 1e-12 * (b_ - a_) || t > b_ + 1e-12 * (b_ - a_)) {
    throw DomainError("BSplineBasis: evaluation point outside [a, b]");
  }
  t = std::min(std::max(t, a_), b_);
  const int p = degree_;
  const int span = find_span(t);

  // Triangular table of all nonzero lower-degree basis values at t
  // (the "ndu" scheme of the standard derivative algorithm).
  Eigen::MatrixXd ndu = Eigen::MatrixXd::Zero(p + 1, p + 1);
  std::vector<double> left(p + 1), right(p + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = t - knots_(span + 1 - j);
    right[j] = knots_(span + j) - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }

  const int n_der = std::min(order, p);
  Eigen::MatrixXd local = Eigen::MatrixXd::Zero(order + 1, p + 1);
  for (int j = 0; j <= p; ++j) local(0, j) = ndu(j, p);

  Eigen::MatrixXd a_work(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a_work.setZero();
    a_work(0, 0) = 1.0;
    for (int k = 1; k <= n_der; ++k) {
      double dsum = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a_work(s2, 0) = a_work(s1, 0) / ndu(pk + 1, rk);
        dsum = a_work(s2, 0) * ndu(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a_work(s2, j) = (a_work(s1, j) - a_work(s1, j - 1)) / ndu(pk + 1, rk + j);
        dsum += a_work(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a_work(s2, k) = -a_work(s1, k - 1) / ndu(pk + 1, r);
        dsum += a_work(s2, k) * ndu(r, pk);
      }
      local(k, r) = dsum;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= n_der; ++k) {
    for (int j = 0; j <= p; ++j) local(k, j) *= factor;
    factor *= (p - k);
  }

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(order + 1, d_);
  for (int k = 0; k <= order; ++k) {
    for (int j = 0; j <= p; ++j) out(k, span - p + j) = local(k, j);
  }
  return out;
}

Eigen::MatrixXd BSplineBasis::eval_matrix(const Grid& grid, int deriv) const {
  Eigen::MatrixXd out(d_, grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    out.col(i) = eval_derivatives(grid.points()(i), deriv).row(deriv);
  }
  return out;
}

int default_quadrature_points(int m_observation) {
  return std::max(4 * m_observation, 401);
}

BasisSystem build_basis(double a, double b, int n_interior, int degree, int m_q) {
  BSplineBasis spline(a, b, n_interior, degree);
  const int d = spline.size();
  if (m_q < 10 * d) {
    throw DomainError("build_basis: quadrature grid too coarse, need at least " +
                      std::to_string(10 * d) + " points");
  }
  Grid quad = Grid::uniform(a, b, m_q);
  Eigen::MatrixXd raw = spline.eval_matrix(quad, 0);

  Eigen::MatrixXd gram(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      gram(i, j) = gram(j, i) = trapezoid_inner(quad, raw.row(i), raw.row(j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw NumericError("build_basis: Gram matrix not positive definite");
  }
  Eigen::MatrixXd transform = eig.eigenvectors() *
                              eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                              eig.eigenvectors().transpose();

  BasisSystem sys(std::move(quad), std::move(raw), std::move(transform),
                  spline.interior_knots(), degree);
  sys.ortho = sys.transform * sys.raw;
  return sys;
}

Eigen::MatrixXd project_scores(const FunctionalSample& sample, const BasisSystem& basis) {
  const double span = basis.b() - basis.a();
  if (sample.grid.a() < basis.a() - 1e-9 * span ||
      sample.grid.b() > basis.b() + 1e-9 * span) {
    throw DomainError("project_scores: sample grid extends outside the basis interval [" +
                      std::to_string(basis.a()) + ", " + std::to_string(basis.b()) + "]");
  }
  const int n = sample.n();
  const int d = basis.d();
  const bool same_grid = sample.grid.size() == basis.grid.size() &&
                         sample.grid.points().isApprox(basis.grid.points());

  Eigen::MatrixXd scores(n, d);
  const Eigen::MatrixXd weighted = basis.ortho * basis.grid.weights().asDiagonal();
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xq = same_grid
        ? Eigen::VectorXd(sample.values.row(i))
        : resample_linear(sample.grid, sample.values.row(i), basis.grid);
    scores.row(i) = (weighted * xq).transpose();
  }
  return scores;
}

Eigen::MatrixXd second_derivative_penalty(const BasisSystem& basis) {
  BSplineBasis spline(basis.a(), basis.b(),
                      static_cast<int>(basis.interior_knots.size()), basis.degree);
  Eigen::MatrixXd raw2 = spline.eval_matrix(basis.grid, 2);
  const int d = basis.d();
  Eigen::MatrixXd omega_raw(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      omega_raw(i, j) = omega_raw(j, i) =
          trapezoid_inner(basis.grid, raw2.row(i), raw2.row(j));
    }
  }
  return basis.transform * omega_raw * basis.transform;
}

}  // namespace tfboost
