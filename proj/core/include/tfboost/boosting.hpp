#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "tfboost/basis.hpp"
#include "tfboost/loss.hpp"
#include "tfboost/multi_index_tree.hpp"

namespace tfboost {

struct LearnerConfig {
  LearnerKind kind = LearnerKind::TypeB;
  int k = 1;           // Type A: number of indices
  int pool_size = 200; // Type B: candidate directions per iteration
};

struct BoostConfig {
  LearnerConfig learner;
  double gamma = 0.05;   // shrinkage in (0, 1)
  int t_max = 1000;
  TreeConfig tree;
  Loss loss = Loss::squared();
  MultiStartConfig opt;  // Type A multi-start protocol (30 / 10 / 5)
  std::uint64_t seed = 0;

  void validate() const;
};

struct BoostStep {
  MultiIndexTree learner;
  double alpha = 0.0;
};

// Fitted gradient-boosting model. steps holds iterations 1..t_max; prediction
// uses only 1..t_stop (the validation-loss argmin, ties to the smallest t).
struct BoostModel {
  double f0 = 0.0;
  std::vector<BoostStep> steps;
  int t_stop = 0;
  BasisSystem basis;
  BoostConfig config;
  std::vector<double> train_trace;  // mean training loss, index t = 0..t_max
  std::vector<double> valid_trace;  // mean validation loss, same indexing
};

BoostModel fit_boost(const FunctionalSample& train, const FunctionalSample& valid,
                     const BasisSystem& basis, const BoostConfig& cfg);

// f0 + sum_{s<=t} gamma * alpha_s * h_s(x); t defaults to t_stop, t = 0 gives
// the constant initial fit.
Eigen::VectorXd predict_boost(const BoostModel& model, const FunctionalSample& sample,
                              int t = -1);

double mspe(const BoostModel& model, const FunctionalSample& test);

}  // namespace tfboost
