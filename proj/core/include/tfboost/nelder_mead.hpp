#pragma once

#include <Eigen/Core>
#include <functional>

#include "tfboost/rng.hpp"

namespace tfboost {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Box(Eigen::VectorXd lo, Eigen::VectorXd hi);
  int dim() const { return static_cast<int>(lower.size()); }
  Eigen::VectorXd clip(Eigen::VectorXd x) const;
  bool contains(const Eigen::VectorXd& x) const;
};

struct NmConfig {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  int max_iter = 0;      // 0 means 500 * dimension
  double f_tol = 1e-8;   // relative spread of simplex values
  double x_tol = 1e-8;   // absolute spread of simplex vertices

  void validate() const;
  int iterations_for(int dim) const { return max_iter > 0 ? max_iter : 500 * dim; }
};

struct NmResult {
  Eigen::VectorXd argmin;
  double value = 0.0;
  int iterations = 0;
};

// Nelder-Mead simplex descent with every candidate clipped into the box
// before evaluation. The returned value never exceeds f(start).
NmResult nelder_mead(const Objective& f, const Eigen::VectorXd& start, const Box& box,
                     const NmConfig& cfg);

struct MultiStartConfig {
  int n_starts = 30;
  int probe_steps = 10;
  int n_survivors = 5;
  NmConfig nm;
};

// Uniformly sample starts in the box, probe each briefly, then run the best
// survivors to convergence and return the overall best point.
NmResult multi_start(const Objective& f, const Box& box, const MultiStartConfig& cfg,
                     Rng& rng);

}  // namespace tfboost
