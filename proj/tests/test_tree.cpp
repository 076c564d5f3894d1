#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "tfboost/errors.hpp"
#include "tfboost/tree.hpp"
#include "test_util.hpp"

using namespace tfboost;

namespace {

// Brute-force reference: enumerate every (feature, midpoint) candidate and
// compute child SSEs by direct loops. Shares only the acceptance rule with
// the implementation, not its arithmetic.
struct OracleNode {
  int feature = -1;
  double threshold = 0.0;
  double value = 0.0;
  std::unique_ptr<OracleNode> left, right;
};

double sse_of(const std::vector<int>& rows, const Eigen::VectorXd& y) {
  double mean = 0.0;
  for (int r : rows) mean += y(r);
  mean /= rows.size();
  double sse = 0.0;
  for (int r : rows) sse += (y(r) - mean) * (y(r) - mean);
  return sse;
}

std::unique_ptr<OracleNode> oracle_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                       std::vector<int> rows, const TreeConfig& cfg,
                                       int depth) {
  auto node = std::make_unique<OracleNode>();
  double mean = 0.0, energy = 0.0;
  for (int r : rows) {
    mean += y(r);
    energy += y(r) * y(r);
  }
  const int n = static_cast<int>(rows.size());
  mean /= n;
  node->value = mean;
  if (depth >= cfg.max_depth || n < 2 * cfg.min_node) return node;

  const double parent_sse = sse_of(rows, y);
  double best_gain = -1.0;
  int best_f = -1;
  double best_thr = 0.0;
  for (int f = 0; f < x.cols(); ++f) {
    std::vector<double> values;
    for (int r : rows) values.push_back(x(r, f));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      double thr = values[k] + (values[k + 1] - values[k]) / 2;
      if (!(thr < values[k + 1])) thr = values[k];
      std::vector<int> left, right;
      for (int r : rows) (x(r, f) <= thr ? left : right).push_back(r);
      if (static_cast<int>(left.size()) < cfg.min_node ||
          static_cast<int>(right.size()) < cfg.min_node) {
        continue;
      }
      const double gain = parent_sse - sse_of(left, y) - sse_of(right, y);
      if (gain > cfg.min_split_improvement + 1e-11 * energy && gain > best_gain) {
        best_gain = gain;
        best_f = f;
        best_thr = thr;
      }
    }
  }
  if (best_f < 0) return node;
  node->feature = best_f;
  node->threshold = best_thr;
  std::vector<int> left, right;
  for (int r : rows) (x(r, best_f) <= best_thr ? left : right).push_back(r);
  node->left = oracle_fit(x, y, std::move(left), cfg, depth + 1);
  node->right = oracle_fit(x, y, std::move(right), cfg, depth + 1);
  return node;
}

void check_same(const Tree& tree, int node, const OracleNode& oracle) {
  const TreeNode& n = tree.nodes[node];
  REQUIRE(n.is_leaf() == (oracle.feature < 0));
  if (n.is_leaf()) {
    CHECK(n.value == doctest::Approx(oracle.value).epsilon(1e-9));
    return;
  }
  CHECK(n.feature == oracle.feature);
  CHECK(n.threshold == doctest::Approx(oracle.threshold).epsilon(1e-12));
  check_same(tree, n.left, *oracle.left);
  check_same(tree, n.right, *oracle.right);
}

double training_sse(const Tree& tree, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  return (predict_tree(tree, x) - y).squaredNorm();
}

}  // namespace

TEST_CASE("constant response gives a single leaf") {
  Rng rng(1);
  const Eigen::MatrixXd x = test::random_matrix(30, 3, rng);
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(30, 2.5);
  const Tree tree = fit_tree(x, y, {.max_depth = 4, .min_node = 2});
  CHECK(tree.nodes.size() == 1);
  CHECK(tree.nodes[0].value == doctest::Approx(2.5));
  CHECK(tree.nodes[0].count == 30);
}

TEST_CASE("eight-row toy set matches the exhaustive oracle") {
  Eigen::MatrixXd x(8, 2);
  x << 0.1, 1.0, 0.2, 0.9, 0.35, 0.2, 0.4, 0.1, 0.6, 0.85, 0.77, 0.3, 0.85, 0.45, 0.9, 0.6;
  Eigen::VectorXd y(8);
  y << 0.3, 0.2, 1.4, 1.5, -0.7, -0.4, 2.2, 2.0;
  const TreeConfig cfg{.max_depth = 3, .min_node = 1};
  const Tree tree = fit_tree(x, y, cfg);
  std::vector<int> rows{0, 1, 2, 3, 4, 5, 6, 7};
  const auto oracle = oracle_fit(x, y, rows, cfg, 0);
  check_same(tree, 0, *oracle);
  CHECK(training_sse(tree, x, y) ==
        doctest::Approx((predict_tree(tree, x) - y).squaredNorm()));
}

TEST_CASE("oracle equivalence on 200 seeded instances") {
  Rng rng(42);
  std::uniform_int_distribution<int> n_dist(2, 12), p_dist(1, 3), depth_dist(1, 3);
  for (int instance = 0; instance < 200; ++instance) {
    const int n = n_dist(rng), p = p_dist(rng);
    TreeConfig cfg{.max_depth = depth_dist(rng), .min_node = 1};
    Eigen::MatrixXd x = test::random_matrix(n, p, rng);
    if (instance % 3 == 0) {  // some duplicated feature values
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) x(i, j) = std::round(x(i, j) * 5.0) / 5.0;
      }
    }
    const Eigen::VectorXd y = test::gaussian_vector(n, rng);
    const Tree tree = fit_tree(x, y, cfg);
    std::vector<int> rows(n);
    for (int i = 0; i < n; ++i) rows[i] = i;
    const auto oracle = oracle_fit(x, y, rows, cfg, 0);
    CAPTURE(instance);
    check_same(tree, 0, *oracle);
  }
}

TEST_CASE("step function splits near the jump at depth one") {
  Rng rng(5);
  const Eigen::MatrixXd x = test::random_matrix(60, 2, rng, 0.0, 1.0);
  Eigen::VectorXd y(60);
  for (int i = 0; i < 60; ++i) y(i) = x(i, 0) > 0.5 ? 1.0 : 0.0;
  const Tree tree = fit_tree(x, y, {.max_depth = 1, .min_node = 1});
  REQUIRE(!tree.nodes[0].is_leaf());
  CHECK(tree.nodes[0].feature == 0);
  CHECK(std::abs(tree.nodes[0].threshold - 0.5) < 0.05);
  const Eigen::VectorXd pred = predict_tree(tree, x);
  CHECK((pred - y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("depth-one tree predicts exactly two values") {
  Rng rng(6);
  const Eigen::MatrixXd x = test::random_matrix(40, 2, rng);
  const Eigen::VectorXd y = test::gaussian_vector(40, rng);
  const Tree tree = fit_tree(x, y, {.max_depth = 1});
  const Eigen::VectorXd pred = predict_tree(tree, x);
  double lo = pred.minCoeff(), hi = pred.maxCoeff();
  for (int i = 0; i < 40; ++i) CHECK((pred(i) == lo || pred(i) == hi));
  CHECK(lo != hi);
}

TEST_CASE("monotone feature transforms keep structure and predictions") {
  Rng rng(7);
  const Eigen::MatrixXd x = test::random_matrix(50, 3, rng);
  const Eigen::VectorXd y = test::gaussian_vector(50, rng);
  const TreeConfig cfg{.max_depth = 3};
  const Tree base = fit_tree(x, y, cfg);

  Eigen::MatrixXd warped = x;
  warped.col(1) = x.col(1).array().exp();           // strictly increasing
  warped.col(2) = 2.0 * x.col(2).array() + 5.0;     // affine increasing
  const Tree other = fit_tree(warped, y, cfg);
  CHECK(predict_tree(base, x) == predict_tree(other, warped));
}

TEST_CASE("negating a feature column flips children but not predictions") {
  Rng rng(8);
  const Eigen::MatrixXd x = test::random_matrix(50, 3, rng);
  const Eigen::VectorXd y = test::gaussian_vector(50, rng);
  const TreeConfig cfg{.max_depth = 3};
  const Tree base = fit_tree(x, y, cfg);
  Eigen::MatrixXd flipped = x;
  flipped.col(0) = -x.col(0);
  const Tree other = fit_tree(flipped, y, cfg);
  CHECK(predict_tree(base, x) == predict_tree(other, flipped));
}

TEST_CASE("training SSE never increases with depth") {
  Rng rng(9);
  const Eigen::MatrixXd x = test::random_matrix(80, 2, rng);
  const Eigen::VectorXd y = test::gaussian_vector(80, rng);
  double prev = std::numeric_limits<double>::infinity();
  for (int depth = 1; depth <= 6; ++depth) {
    const Tree tree = fit_tree(x, y, {.max_depth = depth, .min_node = 1});
    const double sse = training_sse(tree, x, y);
    CHECK(sse <= prev * (1 + 1e-12) + 1e-12);
    prev = sse;
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(fit_tree(Eigen::MatrixXd(), Eigen::VectorXd(), TreeConfig{}),
                  DomainError);
  Rng rng(10);
  const Eigen::MatrixXd x = test::random_matrix(10, 2, rng);
  CHECK_THROWS_AS(fit_tree(x, Eigen::VectorXd::Zero(9), TreeConfig{}), DimensionError);
  const Tree tree = fit_tree(x, Eigen::VectorXd::Zero(10), TreeConfig{});
  CHECK_THROWS_AS(predict_tree(tree, test::random_matrix(5, 3, rng)), DimensionError);
  CHECK_THROWS_AS(fit_tree(x, Eigen::VectorXd::Zero(10), TreeConfig{.max_depth = 0}),
                  DomainError);
}
