#include "onset/ml/data.hpp"

#include <cmath>
#include <string>

namespace onset::ml {

LabeledData LabeledData::subset(std::span<const std::size_t> rows) const {
  LabeledData out;
  out.num_classes = num_classes;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), x.cols());
  out.y.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
    out.y.push_back(y[rows[i]]);
  }
  return out;
}

std::vector<std::size_t> LabeledData::class_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes), 0);
  for (int c : y) ++counts[static_cast<std::size_t>(c)];
  return counts;
}

void validate(const LabeledData& d) {
  if (d.num_classes < 1) throw std::invalid_argument("num_classes must be >= 1");
  if (d.y.size() != d.rows()) throw std::invalid_argument("label count differs from row count");
  for (int c : d.y) {
    if (c < 0 || c >= d.num_classes) {
      throw std::invalid_argument("label " + std::to_string(c) + " out of range");
    }
  }
}

Standardizer Standardizer::fit(const Matrix& x) {
  Standardizer s;
  const auto n = static_cast<double>(x.rows());
  s.mean = x.colwise().mean().transpose();
  s.scale.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    double var = (x.col(j).array() - s.mean(j)).square().sum() / n;
    s.scale(j) = std::max(std::sqrt(var), 1e-9);
  }
  return s;
}

Matrix Standardizer::apply(const Matrix& x) const {
  Matrix out = x;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    out.row(i) = ((x.row(i).transpose() - mean).array() / scale.array()).transpose();
  }
  return out;
}

Vector Standardizer::apply_row(std::span<const double> row) const {
  Eigen::Map<const Vector> v(row.data(), static_cast<Eigen::Index>(row.size()));
  return ((v - mean).array() / scale.array()).matrix();
}

}  // namespace onset::ml
