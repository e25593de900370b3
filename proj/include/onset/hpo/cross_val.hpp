#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "onset/ml/data.hpp"
#include "onset/ml/forest.hpp"

namespace onset::hpo {

struct CvResult {
  double mean_accuracy = 0.0;
  std::vector<double> fold_scores;
};

/// Trains on `train` and returns predicted labels for the rows of `test_x`.
using FitPredict = std::function<std::vector<int>(const ml::LabeledData& train, const ml::Matrix& test_x)>;

/// Fold index per sample. Stratified: each class is shuffled, classes are
/// concatenated in index order, and position i goes to fold i mod k, so fold
/// sizes and per-class counts differ by at most one. When some class has
/// fewer than k samples, falls back to an unstratified shuffle and sets
/// `*stratified` to false.
std::vector<int> assign_folds(const std::vector<int>& labels, int num_classes, int folds,
                              std::uint64_t seed, bool* stratified = nullptr);

/// k-fold accuracy; folds may run concurrently, results are schedule-independent.
CvResult cross_val_score(const FitPredict& fit_predict, const ml::LabeledData& data, int folds,
                         std::uint64_t seed, unsigned workers = 1);

/// Random-forest convenience overload; every fold trains with `model_seed`.
CvResult cross_val_score(const ml::RFConfig& cfg, const ml::LabeledData& data, int folds,
                         std::uint64_t fold_seed, std::uint64_t model_seed, unsigned workers = 1);

}  // namespace onset::hpo
