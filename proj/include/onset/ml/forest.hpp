#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "onset/ml/tree.hpp"

namespace onset::ml {

/// Random-forest hyperparameters. n_trees corresponds to N_T.
struct RFConfig {
  int n_trees = 100;
  int max_depth = 0;  // 0 = unlimited
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  FeatureRule feature_rule = FeatureRule::Sqrt;
  bool bootstrap = true;

  auto operator<=>(const RFConfig&) const = default;
  TreeConfig tree_config() const;
};

void validate(const RFConfig& cfg);
std::string to_string(const RFConfig& cfg);
std::string_view to_string(FeatureRule rule);
FeatureRule feature_rule_from_string(std::string_view s);

class ForestModel {
 public:
  ForestModel() = default;
  ForestModel(std::vector<TreeModel> trees, int num_classes);

  /// Per-class vote counts of the individual trees.
  std::vector<int> votes(std::span<const double> row) const;
  /// argmax of the votes; ties go to the lowest class index.
  int predict(std::span<const double> row) const;

  const std::vector<TreeModel>& trees() const noexcept { return trees_; }
  int num_classes() const noexcept { return num_classes_; }

 private:
  std::vector<TreeModel> trees_;
  int num_classes_ = 0;
};

/// Trains cfg.n_trees trees. Tree j draws its bootstrap sample and feature
/// subsets from a stream keyed by (seed, j), so the result does not depend
/// on the worker count.
ForestModel train_random_forest(const LabeledData& data, const RFConfig& cfg, std::uint64_t seed,
                                unsigned workers = 1);

inline int rf_predict(const ForestModel& model, std::span<const double> row) {
  return model.predict(row);
}

}  // namespace onset::ml
