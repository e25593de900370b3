#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "onset/sim/onset.hpp"

namespace onset::report {

/// 3x3 counts, rows = ground truth, columns = prediction, in class-index
/// order (NonCritical, Critical, RelativelyCritical) = codes (1, 2, 3).
struct ConfusionMatrix {
  std::array<std::array<std::size_t, sim::kNumClasses>, sim::kNumClasses> counts{};

  std::size_t total() const noexcept;
  std::size_t correct() const noexcept;
  std::array<std::size_t, sim::kNumClasses> truth_counts() const noexcept;
  std::array<std::size_t, sim::kNumClasses> predicted_counts() const noexcept;
};

/// From class indices; throws std::invalid_argument on length mismatch,
/// empty input, or an index outside [0, 3).
ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> predicted);
ConfusionMatrix confusion_matrix(std::span<const sim::OnsetClass> truth,
                                 std::span<const sim::OnsetClass> predicted);

/// correct / total; throws std::invalid_argument for an empty matrix.
double accuracy(const ConfusionMatrix& cm);

/// CSV with header `truth\predicted,1,2,3` and one row per truth class code.
std::string format_confusion_csv(const ConfusionMatrix& cm);

}  // namespace onset::report
