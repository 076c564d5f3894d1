#include "tfboost/tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfboost/errors.hpp"

namespace tfboost {

namespace {

// Accepted gains must clear this fraction of the node's response energy;
// below it the improvement is indistinguishable from summation noise.
constexpr double kGainNoiseFraction = 1e-11;

struct BestSplit {
  int feature = -1;
  double threshold = 0.0;
  double gain = -1.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const TreeConfig& cfg)
      : x_(x), y_(y), cfg_(cfg) {}

  Tree build() {
    const int n = static_cast<int>(x_.rows());
    const int p = static_cast<int>(x_.cols());
    std::vector<std::vector<int>> sorted(p);
    for (int f = 0; f < p; ++f) {
      auto& idx = sorted[f];
      idx.resize(n);
      for (int i = 0; i < n; ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double va = x_(a, f), vb = x_(b, f);
        return va < vb || (va == vb && a < b);
      });
    }
    Tree tree;
    tree.n_features = p;
    grow(std::move(sorted), 0, tree.nodes);
    return tree;
  }

 private:
  int grow(std::vector<std::vector<int>> sorted, int depth,
           std::vector<TreeNode>& nodes) {
    const auto& rows = sorted[0];
    const int n = static_cast<int>(rows.size());
    double sum = 0.0, energy = 0.0;
    for (int r : rows) {
      sum += y_(r);
      energy += y_(r) * y_(r);
    }

    const int me = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[me].value = sum / n;
    nodes[me].count = n;

    if (depth >= cfg_.max_depth || n < 2 * cfg_.min_node) return me;

    const BestSplit best = scan(sorted, sum, n, energy);
    if (best.feature < 0) return me;

    std::vector<std::vector<int>> left(sorted.size()), right(sorted.size());
    for (std::size_t f = 0; f < sorted.size(); ++f) {
      for (int r : sorted[f]) {
        if (x_(r, best.feature) <= best.threshold) left[f].push_back(r);
        else right[f].push_back(r);
      }
    }
    sorted.clear();

    nodes[me].feature = best.feature;
    nodes[me].threshold = best.threshold;
    const int l = grow(std::move(left), depth + 1, nodes);
    const int r = grow(std::move(right), depth + 1, nodes);
    nodes[me].left = l;
    nodes[me].right = r;
    return me;
  }

  BestSplit scan(const std::vector<std::vector<int>>& sorted, double sum_total,
                 int n_total, double energy) const {
    BestSplit best;
    const double parent_term = sum_total * sum_total / n_total;
    const double min_gain = cfg_.min_split_improvement + kGainNoiseFraction * energy;
    for (std::size_t f = 0; f < sorted.size(); ++f) {
      const auto& idx = sorted[f];
      double sum_left = 0.0;
      for (int k = 0; k + 1 < n_total; ++k) {
        sum_left += y_(idx[k]);
        const double v = x_(idx[k], f);
        const double v_next = x_(idx[k + 1], f);
        if (!(v_next > v)) continue;
        const int n_left = k + 1;
        const int n_right = n_total - n_left;
        if (n_left < cfg_.min_node || n_right < cfg_.min_node) continue;
        const double sum_right = sum_total - sum_left;
        const double gain = sum_left * sum_left / n_left +
                            sum_right * sum_right / n_right - parent_term;
        if (gain > min_gain && gain > best.gain) {
          double thr = v + (v_next - v) / 2;
          if (!(thr < v_next)) thr = v;  // adjacent representables: keep partition exact
          best.feature = static_cast<int>(f);
          best.threshold = thr;
          best.gain = gain;
        }
      }
    }
    return best;
  }

  const Eigen::MatrixXd& x_;
  const Eigen::VectorXd& y_;
  const TreeConfig& cfg_;
};

}  // namespace

void TreeConfig::validate() const {
  if (max_depth < 1) throw DomainError("TreeConfig: max_depth must be >= 1");
  if (min_node < 1) throw DomainError("TreeConfig: min_node must be >= 1");
  if (min_split_improvement < 0) {
    throw DomainError("TreeConfig: min_split_improvement must be >= 0");
  }
}

int Tree::leaf_count() const {
  int c = 0;
  for (const auto& node : nodes) c += node.is_leaf() ? 1 : 0;
  return c;
}

int Tree::depth() const {
  // Flat preorder storage: recompute by walking.
  std::vector<std::pair<int, int>> stack{{0, 0}};
  int depth = 0;
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    depth = std::max(depth, d);
    if (!nodes[i].is_leaf()) {
      stack.push_back({nodes[i].left, d + 1});
      stack.push_back({nodes[i].right, d + 1});
    }
  }
  return depth;
}

double Tree::predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
  int i = 0;
  while (!nodes[i].is_leaf()) {
    i = row(nodes[i].feature) <= nodes[i].threshold ? nodes[i].left : nodes[i].right;
  }
  return nodes[i].value;
}

std::vector<int> Tree::used_features() const {
  std::vector<int> used;
  for (const auto& node : nodes) {
    if (!node.is_leaf()) used.push_back(node.feature);
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  return used;
}

Tree fit_tree(const Eigen::MatrixXd& features, const Eigen::VectorXd& response,
              const TreeConfig& cfg) {
  cfg.validate();
  if (features.rows() == 0 || features.cols() == 0) {
    throw DomainError("fit_tree: empty feature matrix");
  }
  if (features.rows() != response.size()) {
    throw DimensionError("fit_tree: " + std::to_string(features.rows()) +
                         " rows vs " + std::to_string(response.size()) + " responses");
  }
  if (!features.allFinite() || !response.allFinite()) {
    throw DomainError("fit_tree: non-finite inputs");
  }
  return TreeBuilder(features, response, cfg).build();
}

Eigen::VectorXd predict_tree(const Tree& tree, const Eigen::MatrixXd& features) {
  if (features.cols() != tree.n_features) {
    throw DimensionError("predict_tree: expected " + std::to_string(tree.n_features) +
                         " features, got " + std::to_string(features.cols()));
  }
  Eigen::VectorXd out(features.rows());
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    out(i) = tree.predict_row(features.row(i));
  }
  return out;
}

}  // namespace tfboost
