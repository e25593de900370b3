#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "onset/ml/data.hpp"
#include "onset/util/rng.hpp"

namespace onset::ml {

/// How many features a node may inspect: all, ceil(sqrt(d)) or ceil(log2(d)).
enum class FeatureRule { All, Sqrt, Log2 };

int features_per_node(FeatureRule rule, int num_features);

struct TreeConfig {
  int max_depth = 0;  // 0 = unlimited
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  FeatureRule feature_rule = FeatureRule::All;
};

void validate(const TreeConfig& cfg);

/// 1 - sum (n_i / n)^2; throws std::invalid_argument when all counts are zero.
double gini_impurity(std::span<const std::size_t> class_counts);

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;     // x[feature] <= threshold
  int right = -1;
  int label = 0;     // majority class, lowest index on ties
  int samples = 0;
  int depth = 0;

  bool is_leaf() const noexcept { return feature < 0; }
};

/// Binary CART classification tree stored as a flat node array (root at 0).
class TreeModel {
 public:
  TreeModel() = default;
  TreeModel(std::vector<TreeNode> nodes, int num_features, int num_classes);

  int predict(std::span<const double> row) const;
  /// Index of the leaf reached by `row`.
  int leaf_for(std::span<const double> row) const;

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  int depth() const noexcept { return depth_; }
  int num_features() const noexcept { return num_features_; }
  int num_classes() const noexcept { return num_classes_; }

 private:
  std::vector<TreeNode> nodes_;
  int num_features_ = 0;
  int num_classes_ = 0;
  int depth_ = 0;
};

/// Greedy CART growth on `rows` (bootstrap repeats count as samples).
///
/// Each node picks the split maximizing the Gini gain over its candidate
/// features and midpoint thresholds between consecutive distinct values.
/// With a random feature rule, features are visited in a shuffled order and
/// the search stops once the quota is met and a valid split exists (more
/// features are visited if the quota yields none). Score ties keep the first
/// candidate in visit order, lowest threshold first.
TreeModel grow_tree(const LabeledData& data, std::span<const std::size_t> rows,
                    const TreeConfig& cfg, Rng& rng);

/// Tree on the full dataset. Uses the same RNG stream as tree 0 of a forest
/// trained with the same seed.
TreeModel train_decision_tree(const LabeledData& data, const TreeConfig& cfg, std::uint64_t seed);

}  // namespace onset::ml
