#pragma once

#include <Eigen/Core>

#include "tfboost/grid.hpp"
#include "tfboost/rng.hpp"

namespace tfboost::test {

inline Eigen::MatrixXd random_matrix(int rows, int cols, Rng& rng, double lo = -1.0,
                                     double hi = 1.0) {
  std::uniform_real_distribution<double> unif(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = unif(rng);
  }
  return m;
}

inline Eigen::VectorXd random_vector(int n, Rng& rng, double lo = -1.0, double hi = 1.0) {
  return random_matrix(n, 1, rng, lo, hi).col(0);
}

inline Eigen::VectorXd gaussian_vector(int n, Rng& rng, double sd = 1.0) {
  std::normal_distribution<double> gauss(0.0, sd);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

}  // namespace tfboost::test
