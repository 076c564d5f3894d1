#pragma once

#include <Eigen/Core>

#include "tfboost/grid.hpp"

namespace tfboost {

// Clamped B-spline basis on [a, b] with evenly spaced interior knots,
// evaluated by the de Boor triangular recursion. d = n_interior + degree + 1
// functions.
class BSplineBasis {
 public:
  BSplineBasis(double a, double b, int n_interior, int degree);

  int size() const { return d_; }
  int degree() const { return degree_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const Eigen::VectorXd& interior_knots() const { return interior_; }

  // Values of all d basis functions at t.
  Eigen::VectorXd eval(double t) const;
  // Rows 0..order = values, first, ..., order-th derivatives at t.
  Eigen::MatrixXd eval_derivatives(double t, int order) const;

  // d x m matrix of the requested derivative order over a grid.
  Eigen::MatrixXd eval_matrix(const Grid& grid, int deriv = 0) const;

 private:
  int find_span(double t) const;

  double a_, b_;
  int degree_, d_;
  Eigen::VectorXd interior_;
  Eigen::VectorXd knots_;
};

// Orthonormalized spline system: `ortho = transform * raw` has an identity
// Gram matrix under trapezoid quadrature on the refinement grid.
struct BasisSystem {
  Grid grid;                    // quadrature grid, m_q points
  Eigen::MatrixXd raw;          // d x m_q raw B-spline values
  Eigen::MatrixXd transform;    // d x d symmetric inverse square root of the Gram
  Eigen::MatrixXd ortho;        // d x m_q orthonormalized values
  Eigen::VectorXd interior_knots;
  int degree = 0;

  BasisSystem() : grid(Grid::uniform(0.0, 1.0, 2)) {}  // empty placeholder
  BasisSystem(Grid g, Eigen::MatrixXd raw_in, Eigen::MatrixXd transform_in,
              Eigen::VectorXd knots, int degree_in)
      : grid(std::move(g)), raw(std::move(raw_in)), transform(std::move(transform_in)),
        interior_knots(std::move(knots)), degree(degree_in) {}

  int d() const { return static_cast<int>(ortho.rows()); }
  double a() const { return grid.a(); }
  double b() const { return grid.b(); }
};

// Refinement grid size used when the basis is built for an m-point
// observation grid; keeps orthonormality independent of sparse grids.
int default_quadrature_points(int m_observation);

// Cox-de Boor evaluation on a uniform refinement grid followed by Lowdin
// (symmetric G^{-1/2}) orthonormalization.
BasisSystem build_basis(double a, double b, int n_interior, int degree, int m_q);

// Scores s_{il} = <x_i, psi_l>; curves are linearly resampled onto the
// quadrature grid when the grids differ.
Eigen::MatrixXd project_scores(const FunctionalSample& sample, const BasisSystem& basis);

// Second-derivative Gram matrix of the orthonormal system (curvature
// penalty for penalized functional linear models).
Eigen::MatrixXd second_derivative_penalty(const BasisSystem& basis);

}  // namespace tfboost
