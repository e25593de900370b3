#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "onset/features/power_matrix.hpp"
#include "onset/ml/data.hpp"
#include "onset/sim/scenarios.hpp"

namespace onset::features {

struct Sample {
  FeatureVector features;
  sim::OnsetClass label = sim::OnsetClass::NonCritical;
  long contingency_id = 0;
};

/// Labeled samples with a uniform feature dimension.
class Dataset {
 public:
  explicit Dataset(std::size_t feature_dim = 0) : feature_dim_(feature_dim) {}

  void add(Sample s);

  std::size_t feature_dim() const noexcept { return feature_dim_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }

  /// Counts indexed by class index (NonCritical, Critical, RelativelyCritical).
  std::array<std::size_t, sim::kNumClasses> class_counts() const noexcept { return counts_; }

  /// Design matrix with class indices as labels.
  ml::LabeledData to_labeled() const;

 private:
  std::size_t feature_dim_;
  std::vector<Sample> samples_;
  std::array<std::size_t, sim::kNumClasses> counts_{};
};

/// Delta-flow features for every spec (in parallel, input order preserved).
std::vector<FeatureVector> featurize(const grid::GridCase& c,
                                     const std::vector<sim::ContingencySpec>& specs,
                                     unsigned workers = 1);

/// One sample per spec: features from the immediate post-removal state,
/// label from the full cascade simulation.
Dataset assemble_dataset(const grid::GridCase& c, const std::vector<sim::ContingencySpec>& specs,
                         const sim::SimulationConfig& cfg, unsigned workers = 1);

/// Stratified split: per class, floor(fraction * count) samples (chosen by a
/// seeded shuffle) go to train. Partitions keep the original sample order.
std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction, std::uint64_t seed);

/// CSV: header f_0,...,f_{d-1},label,contingency_id; 17 significant digits.
std::string format_dataset_csv(const Dataset& data);
Dataset parse_dataset_csv(const std::string& text);

}  // namespace onset::features
