#pragma once

#include <span>

#include "onset/ml/data.hpp"

namespace onset::ml {

struct KnnConfig {
  int k = 5;
};

/// Stored training set for Euclidean k-nearest-neighbour voting.
struct KnnModel {
  LabeledData train;
  int k = 5;

  int predict(std::span<const double> row) const;
};

KnnModel train_knn(const LabeledData& data, const KnnConfig& cfg);

/// Majority class of the k nearest rows. Distance ties go to the lower row
/// index, vote ties to the lowest class index.
int knn_predict(const LabeledData& train, std::span<const double> row, int k);

}  // namespace onset::ml
