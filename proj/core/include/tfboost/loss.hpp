#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

namespace tfboost {

// Pluggable boosting loss. Squared loss keeps the closed-form step size;
// the negative gradient is implemented as the plain residual y - f (the
// factor 2 is absorbed by the line search).
class Loss {
 public:
  enum class Kind { Squared, Huber };

  static Loss squared() { return Loss(Kind::Squared, 0.0); }
  static Loss huber(double delta);
  static Loss parse(const std::string& text);  // "squared" or "huber:<delta>"

  Kind kind() const { return kind_; }
  double delta() const { return delta_; }
  std::string name() const;

  double value(double y, double f) const;
  double neg_gradient(double y, double f) const;
  double mean_value(const Eigen::VectorXd& y, const Eigen::VectorXd& f) const;

 private:
  Loss(Kind kind, double delta) : kind_(kind), delta_(delta) {}

  Kind kind_;
  double delta_;
};

// Deterministic golden-section minimizer for 1-D convex slices (initial
// constant and step sizes of non-squared losses).
double golden_section(const std::function<double(double)>& f, double lo, double hi,
                      double tol);

}  // namespace tfboost
