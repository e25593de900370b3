#pragma once

#include <cstdint>
#include <optional>

#include "onset/hpo/bayes_opt.hpp"
#include "onset/hpo/cross_val.hpp"
#include "onset/ml/forest.hpp"

namespace onset::hpo {

struct TuneOptions {
  int budget = 50;
  int folds = 3;
  int n_init = 11;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  KernelConfig kernel{};
  ml::RFConfig default_config = default_rf_config();
};

struct TuneResult {
  BOResult search;
  EvaluatedPoint default_point;  // the seeded default, as evaluated in the trace
  ml::RFConfig best_config;
  ml::ForestModel final_model;
  double train_seconds = 0.0;
  std::optional<double> test_accuracy;
  std::vector<int> test_predictions;
};

/// Minimizes 1 - mean k-fold CV accuracy over the grid using only `train`,
/// then retrains the best configuration on all of `train` and, if `test`
/// is given, reports its held-out accuracy. Stream seeds "cv", "rf" and
/// "bo" are derived from opts.seed.
TuneResult tune_random_forest(const ml::LabeledData& train, const ml::LabeledData* test,
                              const SearchSpace& space, const TuneOptions& opts);

}  // namespace onset::hpo
