#include "tfboost/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfboost/errors.hpp"
#include "tfboost/rng.hpp"

namespace tfboost {

namespace {

double initial_constant(const Eigen::VectorXd& y, const Loss& loss) {
  if (loss.kind() == Loss::Kind::Squared) return y.mean();
  const double lo = y.minCoeff(), hi = y.maxCoeff();
  if (lo == hi) return lo;
  return golden_section(
      [&](double a) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) s += loss.value(y(i), a);
        return s;
      },
      lo, hi, 1e-8 * std::max(1.0, hi - lo));
}

// Exact for squared loss; golden-section on [0, 100] otherwise.
double line_search(const Eigen::VectorXd& y, const Eigen::VectorXd& f,
                   const Eigen::VectorXd& h, const Loss& loss) {
  if (loss.kind() == Loss::Kind::Squared) {
    const double denom = h.squaredNorm();
    if (denom <= 0.0) return 0.0;
    return (y - f).dot(h) / denom;
  }
  return golden_section(
      [&](double alpha) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
          s += loss.value(y(i), f(i) + alpha * h(i));
        }
        return s;
      },
      0.0, 100.0, 1e-6);
}

}  // namespace

void BoostConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("BoostConfig: gamma must lie in (0, 1)");
  }
  if (t_max < 1) throw DomainError("BoostConfig: t_max must be >= 1");
  if (learner.kind == LearnerKind::TypeA && learner.k < 1) {
    throw DomainError("BoostConfig: Type A needs K >= 1");
  }
  if (learner.kind == LearnerKind::TypeB && learner.pool_size < 1) {
    throw DomainError("BoostConfig: Type B needs a positive pool size");
  }
  tree.validate();
}

BoostModel fit_boost(const FunctionalSample& train, const FunctionalSample& valid,
                     const BasisSystem& basis, const BoostConfig& cfg) {
  cfg.validate();
  if (!train.has_response() || !valid.has_response()) {
    throw DomainError("fit_boost: training and validation responses required");
  }
  if (valid.n() == 0) throw DomainError("fit_boost: empty validation set");
  if (train.q() != valid.q()) {
    throw DimensionError("fit_boost: scalar covariate width differs between splits");
  }

  const Eigen::MatrixXd train_scores = project_scores(train, basis);
  const Eigen::MatrixXd valid_scores = project_scores(valid, basis);
  const Eigen::VectorXd& y_train = *train.response;
  const Eigen::VectorXd& y_valid = *valid.response;
  const int n_train = train.n();

  BoostModel model;
  model.basis = basis;
  model.config = cfg;
  model.f0 = initial_constant(y_train, cfg.loss);
  model.steps.reserve(cfg.t_max);
  model.train_trace.reserve(cfg.t_max + 1);
  model.valid_trace.reserve(cfg.t_max + 1);

  Eigen::VectorXd f_train = Eigen::VectorXd::Constant(n_train, model.f0);
  Eigen::VectorXd f_valid = Eigen::VectorXd::Constant(valid.n(), model.f0);
  model.train_trace.push_back(cfg.loss.mean_value(y_train, f_train));
  model.valid_trace.push_back(cfg.loss.mean_value(y_valid, f_valid));

  Rng learner_rng = make_rng(cfg.seed, {static_cast<std::uint64_t>(Stream::kLearner)});

  Eigen::VectorXd gradients(n_train);
  for (int t = 1; t <= cfg.t_max; ++t) {
    for (int i = 0; i < n_train; ++i) {
      gradients(i) = cfg.loss.neg_gradient(y_train(i), f_train(i));
    }

    BoostStep step;
    step.learner = (cfg.learner.kind == LearnerKind::TypeA)
        ? fit_type_a(train_scores, train.scalars, gradients, cfg.learner.k, cfg.tree,
                     cfg.opt, learner_rng)
        : fit_type_b(train_scores, train.scalars, gradients, cfg.learner.pool_size,
                     cfg.tree, learner_rng);

    const Eigen::VectorXd h_train = predict_mit(step.learner, train_scores, train.scalars);
    step.alpha = line_search(y_train, f_train, h_train, cfg.loss);

    f_train += cfg.gamma * step.alpha * h_train;
    f_valid += cfg.gamma * step.alpha *
               predict_mit(step.learner, valid_scores, valid.scalars);
    model.train_trace.push_back(cfg.loss.mean_value(y_train, f_train));
    model.valid_trace.push_back(cfg.loss.mean_value(y_valid, f_valid));
    model.steps.push_back(std::move(step));
  }

  model.t_stop = 1;
  for (int t = 2; t <= cfg.t_max; ++t) {
    if (model.valid_trace[t] < model.valid_trace[model.t_stop]) model.t_stop = t;
  }
  return model;
}

Eigen::VectorXd predict_boost(const BoostModel& model, const FunctionalSample& sample,
                              int t) {
  if (t < 0) t = model.t_stop;
  if (t > model.t_stop || t > static_cast<int>(model.steps.size())) {
    throw DomainError("predict_boost: t=" + std::to_string(t) +
                      " exceeds the early-stopping index " + std::to_string(model.t_stop));
  }
  const Eigen::MatrixXd scores = project_scores(sample, model.basis);
  Eigen::VectorXd f = Eigen::VectorXd::Constant(sample.n(), model.f0);
  for (int s = 0; s < t; ++s) {
    const auto& step = model.steps[s];
    f += model.config.gamma * step.alpha * predict_mit(step.learner, scores, sample.scalars);
  }
  return f;
}

double mspe(const BoostModel& model, const FunctionalSample& test) {
  if (!test.has_response()) throw DomainError("mspe: test responses required");
  if (test.n() == 0) throw DomainError("mspe: empty test set");
  return (predict_boost(model, test) - *test.response).squaredNorm() / test.n();
}

}  // namespace tfboost
