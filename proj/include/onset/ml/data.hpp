#pragma once

#include <Eigen/Core>
#include <span>
#include <stdexcept>
#include <vector>

namespace onset::ml {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Row-major design matrix with integer class labels in [0, num_classes).
struct LabeledData {
  Matrix x;
  std::vector<int> y;
  int num_classes = 0;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(x.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(x.cols()); }

  /// Rows selected by index (repeats allowed).
  LabeledData subset(std::span<const std::size_t> rows) const;
  std::vector<std::size_t> class_counts() const;
};

/// Throws std::invalid_argument unless labels are in range and sizes agree.
void validate(const LabeledData& d);

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index of the largest value; ties go to the lowest index.
template <class T>
int argmax_lowest(std::span<const T> values) {
  int best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

/// Per-feature standardization fitted on the training set.
struct Standardizer {
  Vector mean;
  Vector scale;  // std with a 1e-9 floor

  static Standardizer fit(const Matrix& x);
  Matrix apply(const Matrix& x) const;
  Vector apply_row(std::span<const double> row) const;
};

}  // namespace onset::ml
