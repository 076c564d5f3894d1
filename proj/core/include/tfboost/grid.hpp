#pragma once

#include <Eigen/Core>
#include <optional>

namespace tfboost {

// Strictly increasing evaluation grid t_1 < ... < t_m spanning the curve
// domain. Trapezoid weights are cached since every inner product uses them.
class Grid {
 public:
  explicit Grid(Eigen::VectorXd points);

  static Grid uniform(double a, double b, int m);

  const Eigen::VectorXd& points() const { return points_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  int size() const { return static_cast<int>(points_.size()); }
  double a() const { return points_(0); }
  double b() const { return points_(points_.size() - 1); }

 private:
  Eigen::VectorXd points_;
  Eigen::VectorXd weights_;
};

// Composite trapezoid approximation of the L2 inner product over the grid.
double trapezoid_inner(const Grid& grid, const Eigen::VectorXd& f,
                       const Eigen::VectorXd& g);

// Piecewise-linear resampling of curve values from one grid to another.
// Target points outside the source range are a domain error (no extrapolation);
// matching endpoints get a tiny rounding slack.
Eigen::VectorXd resample_linear(const Grid& from, const Eigen::VectorXd& values,
                                const Grid& to);

// n discretized curves on a shared grid, with optional scalar covariates
// and optional responses.
struct FunctionalSample {
  Grid grid;
  Eigen::MatrixXd values;            // n x m, row i = curve i
  Eigen::MatrixXd scalars;           // n x q, q = 0 when absent
  std::optional<Eigen::VectorXd> response;

  FunctionalSample(Grid grid, Eigen::MatrixXd values,
                   Eigen::MatrixXd scalars = Eigen::MatrixXd(),
                   std::optional<Eigen::VectorXd> response = std::nullopt);

  int n() const { return static_cast<int>(values.rows()); }
  int m() const { return static_cast<int>(values.cols()); }
  int q() const { return static_cast<int>(scalars.cols()); }
  bool has_response() const { return response.has_value(); }

  FunctionalSample slice(int begin, int count) const;
};

}  // namespace tfboost
