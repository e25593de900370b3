#include "onset/ml/naive_bayes.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace onset::ml {

NaiveBayesModel train_gaussian_nb(const LabeledData& data) {
  validate(data);
  if (data.rows() == 0) throw TrainingError("cannot train naive Bayes on an empty dataset");
  const auto k = static_cast<Eigen::Index>(data.num_classes);
  const auto d = data.x.cols();

  NaiveBayesModel m;
  m.mean = Matrix::Zero(k, d);
  m.variance = Matrix::Zero(k, d);
  std::vector<double> count(static_cast<std::size_t>(k), 0.0);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    m.mean.row(data.y[i]) += data.x.row(static_cast<Eigen::Index>(i));
    count[static_cast<std::size_t>(data.y[i])] += 1.0;
  }
  for (Eigen::Index c = 0; c < k; ++c) {
    if (count[static_cast<std::size_t>(c)] > 0) m.mean.row(c) /= count[static_cast<std::size_t>(c)];
  }
  for (std::size_t i = 0; i < data.rows(); ++i) {
    auto diff = data.x.row(static_cast<Eigen::Index>(i)) - m.mean.row(data.y[i]);
    m.variance.row(data.y[i]) += diff.cwiseProduct(diff);
  }
  const double n = static_cast<double>(data.rows());
  for (Eigen::Index c = 0; c < k; ++c) {
    double nc = count[static_cast<std::size_t>(c)];
    if (nc > 0) m.variance.row(c) /= nc;
    m.variance.row(c) = m.variance.row(c).cwiseMax(kNaiveBayesVarianceFloor);
    m.log_prior.push_back(nc > 0 ? std::log(nc / n) : -std::numeric_limits<double>::infinity());
  }
  return m;
}

std::vector<double> NaiveBayesModel::log_joint(std::span<const double> row) const {
  if (static_cast<Eigen::Index>(row.size()) != mean.cols()) {
    throw std::invalid_argument("feature dimension mismatch");
  }
  std::vector<double> out(log_prior.size());
  for (std::size_t c = 0; c < log_prior.size(); ++c) {
    double s = log_prior[c];
    if (std::isinf(s)) {
      out[c] = s;
      continue;
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      double var = variance(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j));
      double diff = row[j] - mean(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j));
      s += -0.5 * std::log(2.0 * std::numbers::pi * var) - diff * diff / (2.0 * var);
    }
    out[c] = s;
  }
  return out;
}

int NaiveBayesModel::predict(std::span<const double> row) const {
  auto lj = log_joint(row);
  return argmax_lowest(std::span<const double>(lj));
}

}  // namespace onset::ml
