#pragma once

#include <span>
#include <vector>

#include "onset/ml/data.hpp"

namespace onset::ml {

inline constexpr double kNaiveBayesVarianceFloor = 1e-9;

/// Gaussian naive Bayes statistics. Rows of `mean`/`variance` are classes.
/// A class absent from training gets log prior -inf and is never predicted.
struct NaiveBayesModel {
  Matrix mean;
  Matrix variance;
  std::vector<double> log_prior;

  int num_classes() const noexcept { return static_cast<int>(log_prior.size()); }
  /// log prior + sum of per-feature log Gaussian densities, per class.
  std::vector<double> log_joint(std::span<const double> row) const;
  int predict(std::span<const double> row) const;
};

NaiveBayesModel train_gaussian_nb(const LabeledData& data);

inline int nb_predict(const NaiveBayesModel& model, std::span<const double> row) {
  return model.predict(row);
}

}  // namespace onset::ml
