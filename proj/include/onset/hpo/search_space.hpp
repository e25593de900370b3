#pragma once

#include <Eigen/Core>
#include <vector>

#include "onset/ml/forest.hpp"

namespace onset::hpo {

inline constexpr int kSearchDims = 6;

/// Finite random-forest grid. Each dimension lists its levels in ascending
/// order; the feature rule orders log2 before sqrt and bootstrap false
/// before true, so those two encode to {0, 1}.
struct SearchSpace {
  std::vector<int> n_trees{200, 400, 600, 800, 1000};
  std::vector<int> max_depth{10, 20, 30, 40};
  std::vector<int> min_samples_split{2, 5, 10, 15};
  std::vector<int> min_samples_leaf{1, 2, 4, 6, 8};
  std::vector<ml::FeatureRule> feature_rule{ml::FeatureRule::Log2, ml::FeatureRule::Sqrt};
  std::vector<bool> bootstrap{false, true};

  std::size_t size() const;
  bool contains(const ml::RFConfig& cfg) const;
  /// Every configuration, in lexicographic order of its encoding.
  std::vector<ml::RFConfig> grid() const;
};

void validate(const SearchSpace& space);

/// Starting point seeded into every search:
/// 400 trees, depth 20, split 2, leaf 1, sqrt features, bootstrap on.
ml::RFConfig default_rf_config();

/// Maps each dimension to rank / (levels - 1) (0 for single-level dims).
/// Throws std::invalid_argument if a value is not one of the levels.
Eigen::VectorXd encode(const ml::RFConfig& cfg, const SearchSpace& space);

/// Inverse of encode; coordinates snap to the nearest level.
ml::RFConfig decode(const Eigen::VectorXd& x, const SearchSpace& space);

}  // namespace onset::hpo
