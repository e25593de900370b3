#include "onset/ml/knn.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace onset::ml {

KnnModel train_knn(const LabeledData& data, const KnnConfig& cfg) {
  validate(data);
  if (data.rows() == 0) throw TrainingError("kNN needs a nonempty training set");
  if (cfg.k < 1) throw std::invalid_argument("kNN k must be >= 1");
  return {data, std::min<int>(cfg.k, static_cast<int>(data.rows()))};
}

int KnnModel::predict(std::span<const double> row) const { return knn_predict(train, row, k); }

int knn_predict(const LabeledData& train, std::span<const double> row, int k) {
  const std::size_t n = train.rows();
  if (n == 0) throw std::invalid_argument("kNN needs a nonempty training set");
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("kNN k=" + std::to_string(k) + " must lie in [1, " +
                                std::to_string(n) + "]");
  }
  if (row.size() != train.cols()) throw std::invalid_argument("feature dimension mismatch");

  Eigen::Map<const Eigen::RowVectorXd> q(row.data(), static_cast<Eigen::Index>(row.size()));
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = {(train.x.row(static_cast<Eigen::Index>(i)) - q).squaredNorm(), i};
  }
  auto kk = static_cast<std::ptrdiff_t>(k);
  std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());

  std::vector<int> votes(static_cast<std::size_t>(train.num_classes), 0);
  for (std::ptrdiff_t i = 0; i < kk; ++i) ++votes[static_cast<std::size_t>(train.y[dist[i].second])];
  return argmax_lowest(std::span<const int>(votes));
}

}  // namespace onset::ml
