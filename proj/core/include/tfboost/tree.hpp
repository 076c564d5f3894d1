#pragma once

#include <Eigen/Core>
#include <vector>

namespace tfboost {

struct TreeConfig {
  int max_depth = 2;
  int min_node = 5;                    // minimum rows per leaf
  double min_split_improvement = 0.0;  // required SSE gain beyond numerical noise

  void validate() const;
};

// Node of a fitted regression tree, stored in a flat preorder vector.
// Internal nodes route a row left iff feature value <= threshold.
struct TreeNode {
  int feature = -1;          // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;        // leaf: mean response of training rows reaching it
  int count = 0;             // leaf: number of those rows

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // root at index 0
  int n_features = 0;

  int leaf_count() const;
  int depth() const;
  double predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const;
  // Feature ids referenced by at least one split, ascending.
  std::vector<int> used_features() const;
};

// Exact greedy least-squares tree: every node scans all features and all
// midpoints between consecutive distinct sorted values, ties broken by
// lowest feature index then lowest threshold.
Tree fit_tree(const Eigen::MatrixXd& features, const Eigen::VectorXd& response,
              const TreeConfig& cfg);

Eigen::VectorXd predict_tree(const Tree& tree, const Eigen::MatrixXd& features);

}  // namespace tfboost
